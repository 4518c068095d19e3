#include "leray/spectral.hpp"

#include <algorithm>
#include <sstream>

#include "leray/util.hpp"

namespace leray {

namespace {

// Columns: standard basis vectors of Tot^n lying in blocks with column index
// >= p (all of Tot^n when p <= 0).
Matrix filtration_selection(const TotalComplex& tot, int n, int p) {
    std::size_t dim_n = tot.dim(n);
    std::vector<std::size_t> idx;
    for (int pp = std::max(p, 0); pp <= tot.max_p(); ++pp) {
        std::size_t off = tot.block_offset(n, pp);
        std::size_t len = tot.block_dim(n, pp);
        for (std::size_t j = 0; j < len; ++j) idx.push_back(off + j);
    }
    Matrix sel(dim_n, idx.size(), tot.modulus());
    for (std::size_t c = 0; c < idx.size(); ++c) sel.set(idx[c], c, 1);
    return sel;
}

// Z_r^{p, n-p} = {x in F^p Tot^n : D x in F^{p+r} Tot^{n+1}}, as columns.
Matrix z_subspace(const TotalComplex& tot, int r, int p, int n) {
    if (n < 0 || n > tot.top_degree()) return Matrix(tot.dim(n), 0, tot.modulus());
    Matrix x = filtration_selection(tot, n, p);
    if (x.cols() == 0) return x;
    int target = p + r;
    std::vector<std::size_t> rows;
    if (n + 1 <= tot.top_degree()) {
        for (int pp = 0; pp < std::min(target, tot.max_p() + 1); ++pp) {
            std::size_t off = tot.block_offset(n + 1, pp);
            std::size_t len = tot.block_dim(n + 1, pp);
            for (std::size_t j = 0; j < len; ++j) rows.push_back(off + j);
        }
    }
    if (rows.empty()) return x;  // no constraint below the target column
    Matrix constrained = tot.differential(n).select_rows(rows) * x;
    return x * kernel_basis(constrained);
}

Subquotient tuple_cohomology(const SimplicialComplex& a, int q, std::uint32_t mod) {
    Matrix d_q = coboundary(a, q, mod);
    Matrix z = kernel_basis(d_q);
    Matrix b = (q == 0) ? Matrix(d_q.cols(), 0, mod)
                        : column_space_basis(coboundary(a, q - 1, mod));
    return Subquotient(d_q.cols(), std::move(z), std::move(b));
}

}  // namespace

int Page::dim(int p, int q) const {
    auto it = entries_.find({p, q});
    return it == entries_.end() ? 0 : it->second.dim();
}

const Subquotient& Page::entry(int p, int q) const {
    auto it = entries_.find({p, q});
    if (it == entries_.end())
        throw IndexOutOfRange("page entry (" + std::to_string(p) + "," + std::to_string(q) +
                              ") outside the stored rectangle");
    return it->second;
}

bool Page::has_differential(int p, int q) const { return differentials_.count({p, q}) > 0; }

const Matrix& Page::differential(int p, int q) const {
    auto it = differentials_.find({p, q});
    if (it == differentials_.end())
        throw IndexOutOfRange("no differential stored at (" + std::to_string(p) + "," +
                              std::to_string(q) + ")");
    return it->second;
}

std::map<std::pair<int, int>, int> Page::dims() const {
    std::map<std::pair<int, int>, int> out;
    for (const auto& [pq, sq] : entries_)
        if (sq.dim() > 0) out.emplace(pq, sq.dim());
    return out;
}

Page page(const TotalComplex& tot, int r) {
    if (r < 0) throw IndexOutOfRange("page number must be nonnegative");
    Page out;
    out.r_ = r;
    out.index_ = tot.filtration_index();
    out.max_p_ = tot.max_p();
    out.max_q_ = tot.max_q();
    out.mod_ = tot.modulus();
    int r1 = std::max(r - 1, 0);
    for (int p = 0; p <= out.max_p_; ++p) {
        for (int q = 0; q <= out.max_q_; ++q) {
            int n = p + q;
            Matrix z = z_subspace(tot, r, p, n);
            Matrix b1 = z_subspace(tot, r1, p + 1, n);
            Matrix b2(tot.dim(n), 0, tot.modulus());
            if (n >= 1) {
                Matrix z_prev = z_subspace(tot, r1, p - r + 1, n - 1);
                b2 = tot.differential(n - 1) * z_prev;
            }
            Matrix b = column_space_basis(hconcat(b1, b2));
            out.entries_.emplace(std::make_pair(p, q),
                                 Subquotient(tot.dim(n), std::move(z), std::move(b)));
        }
    }
    for (int p = 0; p <= out.max_p_; ++p) {
        for (int q = 0; q <= out.max_q_; ++q) {
            int tp = p + r, tq = q - r + 1;
            if (!out.in_rectangle(tp, tq)) continue;  // target provably zero
            out.differentials_.emplace(
                std::make_pair(p, q),
                induced_map(out.entry(p, q), out.entry(tp, tq), tot.differential(p + q)));
        }
    }
    return out;
}

Page e2_as_cech(const DoubleComplexSlice& slice, const TotalComplex& tot) {
    std::uint32_t mod = slice.modulus();
    Page out;
    out.r_ = 2;
    out.index_ = slice.filtration_index();
    out.max_p_ = slice.max_p();
    out.max_q_ = slice.max_q();
    out.mod_ = mod;

    // per-tuple cohomology in every degree
    std::map<NerveTuple, std::vector<Subquotient>> h;
    for (int p = 0; p <= slice.max_p(); ++p) {
        for (const NerveTuple& t : slice.tuples(p)) {
            std::vector<Subquotient> per_degree;
            for (int q = 0; q <= slice.max_q(); ++q)
                per_degree.push_back(tuple_cohomology(slice.tuple_complex(t), q, mod));
            h.emplace(t, std::move(per_degree));
        }
    }

    // Cech complex of the cover with values in the per-tuple cohomology:
    // spaces V_{p,q} concatenate the quotient bases tuple by tuple.
    auto v_dim = [&](int p, int q) {
        std::size_t d = 0;
        for (const NerveTuple& t : slice.tuples(p)) d += h.at(t)[q].dim();
        return d;
    };
    auto v_offset = [&](int p, int q, const NerveTuple& t) {
        std::size_t off = 0;
        for (const NerveTuple& u : slice.tuples(p)) {
            if (u == t) return off;
            off += h.at(u)[q].dim();
        }
        throw IndexOutOfRange("tuple not present in Cech space");
    };
    auto cech_delta_bar = [&](int p, int q) {
        Matrix m(v_dim(p + 1, q), v_dim(p, q), mod);
        for (const NerveTuple& t : slice.tuples(p + 1)) {
            const Subquotient& target = h.at(t)[q];
            if (target.dim() == 0) continue;
            for (std::size_t j = 0; j < t.indices.size(); ++j) {
                NerveTuple face = t.omit(j);
                const Subquotient& source = h.at(face)[q];
                if (source.dim() == 0) continue;
                Matrix rest = cochain_restriction(slice.tuple_complex(face),
                                                  slice.tuple_complex(t), q, mod);
                Matrix block = induced_map(source, target, rest);
                std::size_t r0 = v_offset(p + 1, q, t);
                std::size_t c0 = v_offset(p, q, face);
                int sign = (j % 2 == 0) ? 1 : -1;
                for (std::size_t r = 0; r < block.rows(); ++r)
                    for (std::size_t c = 0; c < block.cols(); ++c)
                        if (block.at(r, c))
                            m.add_at(r0 + r, c0 + c,
                                     sign * static_cast<std::int64_t>(block.at(r, c)));
            }
        }
        return m;
    };

    for (int q = 0; q <= slice.max_q(); ++q) {
        std::vector<Matrix> deltas;  // delta-bar at p = 0..max_p
        for (int p = 0; p <= slice.max_p(); ++p)
            deltas.push_back(p < slice.max_p() ? cech_delta_bar(p, q)
                                               : Matrix(0, v_dim(p, q), mod));
        for (int p = 0; p <= slice.max_p(); ++p) {
            Matrix z = kernel_basis(deltas[p]);
            Matrix b = (p == 0) ? Matrix(v_dim(0, q), 0, mod) : column_space_basis(deltas[p - 1]);
            out.entries_.emplace(std::make_pair(p, q),
                                 Subquotient(v_dim(p, q), std::move(z), std::move(b)));
        }
    }

    // the executable identification: both routes must agree dimensionwise
    Page filtered = page(tot, 2);
    for (int p = 0; p <= slice.max_p(); ++p)
        for (int q = 0; q <= slice.max_q(); ++q)
            if (out.dim(p, q) != filtered.dim(p, q)) {
                std::ostringstream os;
                os << "E_2 routes disagree at slice " << slice.filtration_index() << ", (p,q)=("
                   << p << "," << q << "): Cech " << out.dim(p, q) << " vs filtered "
                   << filtered.dim(p, q);
                throw MismatchError(os.str());
            }
    return out;
}

Page e2_as_cech(const DoubleComplexSlice& slice) {
    return e2_as_cech(slice, TotalComplex::build(slice));
}

StablePage run_to_infinity(const TotalComplex& tot) {
    int max_p = tot.max_p(), max_q = tot.max_q();
    if (max_p < 0 || max_q < 0) return {page(tot, 1), 1};
    // d_r needs a source column p and target column p+r inside [0, max_p] and
    // a target row q-r+1 >= 0, so every differential past this bound vanishes
    int r_bound = std::min(max_p, max_q + 1) + 1;
    r_bound = std::max(r_bound, 1);
    int last_nonzero = 0;
    Page current;
    for (int r = 1; r <= r_bound; ++r) {
        current = page(tot, r);
        for (int p = 0; p <= max_p; ++p)
            for (int q = 0; q <= max_q; ++q)
                if (current.has_differential(p, q) && !current.differential(p, q).is_zero())
                    last_nonzero = r;
    }
    if (last_nonzero >= r_bound)
        throw InvariantViolation("stabilization guard: nonzero differential at the shape bound");
    return {std::move(current), std::max(last_nonzero + 1, 1)};
}

std::vector<ConvergenceRow> convergence_check(const Page& stable, const SimplicialComplex& k_i) {
    int top = (stable.max_p() >= 0 && stable.max_q() >= 0) ? stable.max_p() + stable.max_q() : -1;
    int n_max = std::max({top, k_i.dimension(), 0});
    std::vector<ConvergenceRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        int total = 0;
        for (int p = 0; p <= stable.max_p(); ++p) {
            int q = n - p;
            if (q >= 0 && q <= stable.max_q()) total += stable.dim(p, q);
        }
        int direct = cohomology_dim(k_i, n, stable.modulus());
        rows.push_back({n, total, direct, total == direct});
    }
    return rows;
}

Matrix PageMap::matrix(int p, int q) const {
    auto it = entries.find({p, q});
    if (it == entries.end())
        throw IndexOutOfRange("no page map entry at (" + std::to_string(p) + "," +
                              std::to_string(q) + ")");
    return it->second;
}

PageMap eta_on_page(const Page& at_i, const Page& at_next, const TotalComplex& tot_i,
                    const TotalComplex& tot_next) {
    if (at_i.r() != at_next.r())
        throw InvariantViolation("eta_on_page: pages live on different page numbers");
    PageMap out;
    out.r = at_i.r();
    out.source_index = at_i.filtration_index();
    for (int p = 0; p <= at_i.max_p(); ++p) {
        for (int q = 0; q <= at_i.max_q(); ++q) {
            Matrix rest = tot_restriction(tot_i, tot_next, p + q);
            out.entries.emplace(std::make_pair(p, q),
                                induced_map(at_i.entry(p, q), at_next.entry(p, q), rest));
        }
    }
    return out;
}

bool eta_commutes(const DoubleComplexSlice& from, const DoubleComplexSlice& to) {
    for (int p = 0; p <= from.max_p(); ++p) {
        for (int q = 0; q <= from.max_q(); ++q) {
            Matrix eta_pq = block_restriction(from, to, p, q);
            if (q < from.max_q()) {
                Matrix eta_up = block_restriction(from, to, p, q + 1);
                if (to.vert_d(p, q) * eta_pq != eta_up * from.vert_d(p, q)) return false;
            }
            if (p < from.max_p()) {
                Matrix eta_right = block_restriction(from, to, p + 1, q);
                if (to.delta(p, q) * eta_pq != eta_right * from.delta(p, q)) return false;
            }
        }
    }
    return true;
}

SpectralStack SpectralStack::build(const FilteredComplex& k, const CoverSystem& cover,
                                   std::uint32_t p) {
    SpectralStack out;
    out.length_ = k.length();
    out.mod_ = p;
    out.max_p_ = static_cast<int>(cover.ids().size()) - 1;
    out.max_q_ = cover.domain().dimension();
    if (out.max_p_ >= 0 && out.max_q_ >= 0)
        out.r_inf_ = std::max(std::min(out.max_p_, out.max_q_ + 1) + 1, 1);
    else
        out.r_inf_ = 1;

    std::size_t count = static_cast<std::size_t>(out.length_) + 1;
    out.slices_.resize(count);
    out.totals_.resize(count);
    out.pages_.assign(count, {});
    out.etas_.assign(count > 0 ? count - 1 : 0, {});
    out.r_stable_.assign(count, 1);

    parallel_for(count, [&](std::size_t i) {
        out.slices_[i] = DoubleComplexSlice::build(k, cover, static_cast<int>(i), p);
        out.totals_[i] = TotalComplex::build(out.slices_[i]);
        std::vector<Page> pages;
        pages.reserve(static_cast<std::size_t>(out.r_inf_) + 1);
        int last_nonzero = 0;
        for (int r = 0; r <= out.r_inf_; ++r) {
            pages.push_back(page(out.totals_[i], r));
            if (r == 0) continue;
            const Page& pg = pages.back();
            for (int pp = 0; pp <= pg.max_p(); ++pp)
                for (int qq = 0; qq <= pg.max_q(); ++qq)
                    if (pg.has_differential(pp, qq) && !pg.differential(pp, qq).is_zero())
                        last_nonzero = r;
        }
        out.pages_[i] = std::move(pages);
        out.r_stable_[i] = std::max(last_nonzero + 1, 1);
    });
    parallel_for(out.etas_.size(), [&](std::size_t i) {
        std::vector<PageMap> maps;
        maps.reserve(static_cast<std::size_t>(out.r_inf_) + 1);
        for (int r = 0; r <= out.r_inf_; ++r)
            maps.push_back(eta_on_page(out.pages_[i][r], out.pages_[i + 1][r], out.totals_[i],
                                       out.totals_[i + 1]));
        out.etas_[i] = std::move(maps);
    });
    return out;
}

const Page& SpectralStack::page_at(int i, int r) const {
    if (r < 0 || r > r_inf_)
        throw IndexOutOfRange("page " + std::to_string(r) + " not materialized (0.." +
                              std::to_string(r_inf_) + ")");
    return pages_.at(i).at(r);
}

const PageMap& SpectralStack::eta_at(int i, int r) const {
    if (r < 0 || r > r_inf_)
        throw IndexOutOfRange("page " + std::to_string(r) + " not materialized (0.." +
                              std::to_string(r_inf_) + ")");
    return etas_.at(i).at(r);
}

}  // namespace leray
