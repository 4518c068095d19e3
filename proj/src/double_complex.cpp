#include "leray/double_complex.hpp"

#include <algorithm>

namespace leray {

const std::vector<CochainLabel> DoubleComplexSlice::empty_basis_{};
const std::vector<NerveTuple> DoubleComplexSlice::empty_tuples_{};
const std::vector<TotalLabel> TotalComplex::empty_basis_{};

namespace {

// Intersection of pulled-back pieces on the full domain, no filtration.
SimplicialComplex unfiltered_intersection(const CoverSystem& cover, const NerveTuple& t) {
    std::set<Simplex> kept;
    for (const Simplex& s : cover.domain().simplices()) {
        bool in_all = true;
        for (int id : t.indices)
            if (!cover.pullback_piece(id).contains(s)) { in_all = false; break; }
        if (in_all) kept.insert(s);
    }
    return SimplicialComplex(std::move(kept));
}

}  // namespace

DoubleComplexSlice DoubleComplexSlice::build(const FilteredComplex& k, const CoverSystem& cover,
                                             int i, std::uint32_t p) {
    if (i < 0 || i > k.length())
        throw IndexOutOfRange("slice index " + std::to_string(i) + " outside filtration");
    DoubleComplexSlice out;
    out.index_ = i;
    out.mod_ = p;
    out.max_p_ = static_cast<int>(cover.ids().size()) - 1;
    out.max_q_ = cover.domain().dimension();

    SimplicialComplex k_i = k.slice(i);

    // enumerate tuples whose unfiltered intersection is nonempty; supersets of
    // an empty intersection stay empty, so the tree can be pruned
    out.tuples_by_p_.resize(out.max_p_ >= 0 ? out.max_p_ + 1 : 0);
    std::vector<NerveTuple> frontier;
    for (int id : cover.ids()) {
        NerveTuple t({id});
        if (!unfiltered_intersection(cover, t).empty()) {
            out.tuples_by_p_[0].push_back(t);
            frontier.push_back(t);
        }
    }
    for (int len = 2; len <= out.max_p_ + 1; ++len) {
        std::vector<NerveTuple> next;
        for (const NerveTuple& t : frontier) {
            for (int id : cover.ids()) {
                if (id <= t.indices.back()) continue;
                std::vector<int> idx = t.indices;
                idx.push_back(id);
                NerveTuple bigger(std::move(idx));
                if (!unfiltered_intersection(cover, bigger).empty()) next.push_back(bigger);
            }
        }
        std::sort(next.begin(), next.end());
        out.tuples_by_p_[len - 1] = next;
        frontier = std::move(next);
        if (frontier.empty()) break;
    }

    // per-tuple complexes at this slice and the bigraded bases
    for (int pp = 0; pp <= out.max_p_; ++pp) {
        for (const NerveTuple& t : out.tuples_by_p_[pp]) {
            std::set<Simplex> kept;
            SimplicialComplex unfiltered = unfiltered_intersection(cover, t);
            for (const Simplex& s : unfiltered.simplices())
                if (k_i.contains(s)) kept.insert(s);
            out.complexes_.emplace(t, SimplicialComplex(std::move(kept)));
        }
        for (int q = 0; q <= out.max_q_; ++q) {
            std::vector<CochainLabel> basis;
            for (const NerveTuple& t : out.tuples_by_p_[pp])
                for (const Simplex& s : out.complexes_.at(t).simplices_of_dim(q))
                    basis.push_back({t, s});
            if (!basis.empty()) out.bases_.emplace(std::make_pair(pp, q), std::move(basis));
        }
    }
    return out;
}

const std::vector<NerveTuple>& DoubleComplexSlice::tuples(int p) const {
    if (p < 0 || p >= static_cast<int>(tuples_by_p_.size())) return empty_tuples_;
    return tuples_by_p_[p];
}

const SimplicialComplex& DoubleComplexSlice::tuple_complex(const NerveTuple& t) const {
    auto it = complexes_.find(t);
    if (it == complexes_.end())
        throw IndexOutOfRange("tuple " + t.str() + " has empty intersection");
    return it->second;
}

std::size_t DoubleComplexSlice::block_dim(int p, int q) const {
    auto it = bases_.find({p, q});
    return it == bases_.end() ? 0 : it->second.size();
}

const std::vector<CochainLabel>& DoubleComplexSlice::block_basis(int p, int q) const {
    auto it = bases_.find({p, q});
    return it == bases_.end() ? empty_basis_ : it->second;
}

Matrix DoubleComplexSlice::delta(int p, int q) const {
    const auto& domain = block_basis(p, q);
    const auto& codomain = block_basis(p + 1, q);
    std::map<CochainLabel, std::size_t> col_of;
    for (std::size_t c = 0; c < domain.size(); ++c) col_of.emplace(domain[c], c);
    Matrix m(codomain.size(), domain.size(), mod_);
    for (std::size_t r = 0; r < codomain.size(); ++r) {
        const CochainLabel& lab = codomain[r];
        for (std::size_t j = 0; j < lab.tuple.indices.size(); ++j) {
            // the simplex lives in the bigger intersection, hence in every
            // facet tuple's intersection as well
            auto it = col_of.find({lab.tuple.omit(j), lab.simplex});
            if (it != col_of.end()) m.add_at(r, it->second, (j % 2 == 0) ? 1 : -1);
        }
    }
    return m;
}

Matrix DoubleComplexSlice::vert_d(int p, int q) const {
    const auto& domain = block_basis(p, q);
    const auto& codomain = block_basis(p, q + 1);
    std::map<CochainLabel, std::size_t> col_of;
    for (std::size_t c = 0; c < domain.size(); ++c) col_of.emplace(domain[c], c);
    Matrix m(codomain.size(), domain.size(), mod_);
    for (std::size_t r = 0; r < codomain.size(); ++r) {
        const CochainLabel& lab = codomain[r];
        const std::vector<int>& vs = lab.simplex.vertices;
        for (std::size_t j = 0; j < vs.size(); ++j) {
            std::vector<int> face;
            face.reserve(vs.size() - 1);
            for (std::size_t t = 0; t < vs.size(); ++t)
                if (t != j) face.push_back(vs[t]);
            auto it = col_of.find({lab.tuple, Simplex(std::move(face))});
            if (it != col_of.end()) m.add_at(r, it->second, (j % 2 == 0) ? 1 : -1);
        }
    }
    return m;
}

Matrix block_restriction(const DoubleComplexSlice& from, const DoubleComplexSlice& to, int p,
                         int q) {
    const auto& domain = from.block_basis(p, q);
    const auto& codomain = to.block_basis(p, q);
    std::map<CochainLabel, std::size_t> col_of;
    for (std::size_t c = 0; c < domain.size(); ++c) col_of.emplace(domain[c], c);
    Matrix m(codomain.size(), domain.size(), from.modulus());
    for (std::size_t r = 0; r < codomain.size(); ++r) {
        auto it = col_of.find(codomain[r]);
        if (it == col_of.end())
            throw InvariantViolation("block_restriction: target label missing upstream");
        m.set(r, it->second, 1);
    }
    return m;
}

TotalComplex TotalComplex::build(const DoubleComplexSlice& slice) {
    TotalComplex out;
    out.index_ = slice.filtration_index();
    out.mod_ = slice.modulus();
    out.max_p_ = slice.max_p();
    out.max_q_ = slice.max_q();
    out.top_ = (out.max_p_ >= 0 && out.max_q_ >= 0) ? out.max_p_ + out.max_q_ : -1;
    int degrees = out.top_ + 1;
    out.bases_.resize(std::max(degrees, 0));
    out.blocks_.resize(std::max(degrees, 0));
    for (int n = 0; n < degrees; ++n) {
        for (int p = 0; p <= std::min(out.max_p_, n); ++p) {
            int q = n - p;
            if (q > out.max_q_) continue;
            std::size_t offset = out.bases_[n].size();
            for (const CochainLabel& lab : slice.block_basis(p, q))
                out.bases_[n].push_back({p, lab});
            std::size_t len = out.bases_[n].size() - offset;
            if (len > 0) out.blocks_[n].emplace(p, std::make_pair(offset, len));
        }
    }
    out.differentials_.reserve(std::max(degrees, 0));
    for (int n = 0; n < degrees; ++n) {
        Matrix d_n(out.dim(n + 1), out.dim(n), out.mod_);
        for (const auto& [p, block] : out.blocks_[n]) {
            int q = n - p;
            // horizontal part
            if (out.block_dim(n + 1, p + 1) > 0) {
                Matrix del = slice.delta(p, q);
                std::size_t row0 = out.block_offset(n + 1, p + 1);
                for (std::size_t r = 0; r < del.rows(); ++r)
                    for (std::size_t c = 0; c < del.cols(); ++c)
                        if (del.at(r, c)) d_n.set(row0 + r, block.first + c, del.at(r, c));
            }
            // vertical part, sign (-1)^p
            if (out.block_dim(n + 1, p) > 0) {
                Matrix vd = slice.vert_d(p, q);
                std::size_t row0 = out.block_offset(n + 1, p);
                int sign = (p % 2 == 0) ? 1 : -1;
                for (std::size_t r = 0; r < vd.rows(); ++r)
                    for (std::size_t c = 0; c < vd.cols(); ++c)
                        if (vd.at(r, c))
                            d_n.add_at(row0 + r, block.first + c,
                                       sign * static_cast<std::int64_t>(vd.at(r, c)));
            }
        }
        out.differentials_.push_back(std::move(d_n));
    }
    for (int n = 0; n + 1 < degrees; ++n) {
        if (!(out.differentials_[n + 1] * out.differentials_[n]).is_zero())
            throw SignError("total differential does not square to zero at degree " +
                            std::to_string(n));
    }
    return out;
}

std::size_t TotalComplex::dim(int n) const {
    if (n < 0 || n > top_) return 0;
    return bases_[n].size();
}

const std::vector<TotalLabel>& TotalComplex::basis(int n) const {
    if (n < 0 || n > top_) return empty_basis_;
    return bases_[n];
}

const Matrix& TotalComplex::differential(int n) const {
    if (n < 0 || n > top_)
        throw IndexOutOfRange("total differential degree " + std::to_string(n) + " out of range");
    return differentials_[n];
}

std::size_t TotalComplex::block_offset(int n, int p) const {
    if (n < 0 || n > top_) return 0;
    auto it = blocks_[n].find(p);
    return it == blocks_[n].end() ? 0 : it->second.first;
}

std::size_t TotalComplex::block_dim(int n, int p) const {
    if (n < 0 || n > top_) return 0;
    auto it = blocks_[n].find(p);
    return it == blocks_[n].end() ? 0 : it->second.second;
}

int total_cohomology_dim(const TotalComplex& tc, int n) {
    if (n < 0 || n > tc.top_degree()) return 0;
    const Matrix& d_n = tc.differential(n);
    int ker = static_cast<int>(d_n.cols()) - rank(d_n);
    int im = (n == 0) ? 0 : rank(tc.differential(n - 1));
    return ker - im;
}

Matrix tot_restriction(const TotalComplex& from, const TotalComplex& to, int n) {
    const auto& domain = from.basis(n);
    const auto& codomain = to.basis(n);
    std::map<TotalLabel, std::size_t> col_of;
    for (std::size_t c = 0; c < domain.size(); ++c) col_of.emplace(domain[c], c);
    Matrix m(codomain.size(), domain.size(), from.modulus());
    for (std::size_t r = 0; r < codomain.size(); ++r) {
        auto it = col_of.find(codomain[r]);
        if (it == col_of.end())
            throw InvariantViolation("tot_restriction: target label missing upstream");
        m.set(r, it->second, 1);
    }
    return m;
}

}  // namespace leray
