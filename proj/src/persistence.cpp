#include "leray/persistence.hpp"

#include <algorithm>
#include <string>

#include "leray/oracle.hpp"

namespace leray {

void PersistenceModule::validate() const {
    if (dims.empty()) throw InvariantViolation("persistence module must cover index 0");
    if (maps.size() + 1 != dims.size())
        throw InvariantViolation("persistence module needs one map per consecutive index pair");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (static_cast<int>(maps[i].cols()) != dims[i] ||
            static_cast<int>(maps[i].rows()) != dims[i + 1])
            throw InvariantViolation("connecting map " + std::to_string(i) +
                                     " has shape inconsistent with the spaces");
        if (maps[i].modulus() != modulus)
            throw InvariantViolation("connecting map modulus mismatch");
    }
}

Matrix PersistenceModule::composite(int i, int j) const {
    if (i < 0 || j < i || j > length())
        throw IndexOutOfRange("composite range [" + std::to_string(i) + "," + std::to_string(j) +
                              "] outside module");
    Matrix acc = Matrix::identity(static_cast<std::size_t>(dims[i]), modulus);
    for (int s = i; s < j; ++s) acc = maps[s] * acc;
    return acc;
}

CochainTower cohomology_tower(const FilteredComplex& k, int degree, std::uint32_t p) {
    if (degree < 0) throw IndexOutOfRange("cohomology degree must be nonnegative");
    CochainTower tower;
    tower.module.modulus = p;
    int n = k.length();
    std::vector<SimplicialComplex> slices;
    slices.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) slices.push_back(k.slice(i));
    for (int i = 0; i <= n; ++i) {
        Matrix d_k = coboundary(slices[i], degree, p);
        Matrix z = kernel_basis(d_k);
        Matrix b = (degree == 0) ? Matrix(d_k.cols(), 0, p)
                                 : column_space_basis(coboundary(slices[i], degree - 1, p));
        tower.groups.emplace_back(d_k.cols(), std::move(z), std::move(b));
        tower.module.dims.push_back(tower.groups.back().dim());
    }
    for (int i = 0; i < n; ++i) {
        tower.restrictions.push_back(cochain_restriction(slices[i], slices[i + 1], degree, p));
        tower.module.maps.push_back(
            induced_map(tower.groups[i], tower.groups[i + 1], tower.restrictions[i]));
    }
    tower.module.validate();
    return tower;
}

int persistent_dim(const PersistenceModule& m, int i, int p) {
    if (p < 0) throw IndexOutOfRange("persistence offset must be nonnegative");
    int i0 = std::max(i, 0);           // K_i = K_0 for i <= 0
    if (i0 > m.length()) return 0;     // K_i empty past the end
    int j = i0 + p;
    if (j > m.length()) return 0;
    return rank(m.composite(i0, j));
}

int persistent_dim(const CochainTower& tower, int i, int p) {
    int via_composite = persistent_dim(tower.module, i, p);
    int i0 = std::max(i, 0);
    int n = tower.module.length();
    int via_subquotient = 0;
    if (i0 <= n && i0 + p <= n) {
        int j = i0 + p;
        // push the cocycles of K_i forward to C^k(K_j)
        Matrix forward = Matrix::identity(tower.groups[i0].ambient_dim(), tower.module.modulus);
        for (int s = i0; s < j; ++s) forward = tower.restrictions[s] * forward;
        Matrix z_forward = forward * tower.groups[i0].cycles();
        Matrix meet = intersect_column_spaces(tower.groups[j].boundaries(), z_forward);
        Subquotient h(tower.groups[j].ambient_dim(), std::move(z_forward), std::move(meet));
        via_subquotient = h.dim();
    }
    if (via_composite != via_subquotient)
        throw InvariantViolation("persistent dimension formulas disagree: composite rank " +
                                 std::to_string(via_composite) + " vs subquotient " +
                                 std::to_string(via_subquotient));
    return via_composite;
}

Barcode interval_decomposition(const PersistenceModule& m) {
    m.validate();
    std::uint32_t mod = m.modulus;
    int n = m.length();
    Barcode bars;

    struct Active {
        int birth;
        Vec v;  // normalized: leading entry 1
    };
    // kept sorted by birth (then insertion order): older bars reduce first
    std::vector<Active> active;

    auto first_nonzero = [](const Vec& v) {
        for (std::size_t r = 0; r < v.size(); ++r)
            if (v[r]) return r;
        return v.size();
    };
    auto scale = [&](Vec& v, std::uint32_t f) {
        for (auto& x : v) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * f % mod);
    };
    auto reduce = [&](Vec& w, const std::map<std::size_t, std::size_t>& pivot_of,
                      const std::vector<Active>& pool) {
        for (;;) {
            std::size_t piv = first_nonzero(w);
            if (piv == w.size()) return piv;
            auto it = pivot_of.find(piv);
            if (it == pivot_of.end()) return piv;
            const Vec& u = pool[it->second].v;
            std::uint32_t f = w[piv];
            for (std::size_t r = piv; r < w.size(); ++r)
                w[r] = static_cast<std::uint32_t>(
                    (w[r] + static_cast<std::uint64_t>(mod - f) * u[r]) % mod);
        }
    };
    auto normalize = [&](Vec& v, std::size_t piv) {
        std::uint32_t lead = v[piv];
        if (lead == 1) return;
        FieldElem inv = FieldElem(lead, mod).inverse();
        scale(v, inv.value());
    };

    for (int c = 0; c < m.dims[0]; ++c) {
        Vec e(static_cast<std::size_t>(m.dims[0]), 0);
        e[static_cast<std::size_t>(c)] = 1;
        active.push_back({0, std::move(e)});
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Active> survivors;
        std::map<std::size_t, std::size_t> pivot_of;
        for (Active& a : active) {
            Vec w = m.maps[i].apply(a.v);
            std::size_t piv = reduce(w, pivot_of, survivors);
            if (piv == w.size()) {
                bars.push_back({a.birth, i + 1});
            } else {
                normalize(w, piv);
                pivot_of.emplace(piv, survivors.size());
                survivors.push_back({a.birth, std::move(w)});
            }
        }
        for (int c = 0; c < m.dims[i + 1]; ++c) {
            Vec e(static_cast<std::size_t>(m.dims[i + 1]), 0);
            e[static_cast<std::size_t>(c)] = 1;
            std::size_t piv = reduce(e, pivot_of, survivors);
            if (piv == e.size()) continue;
            normalize(e, piv);
            pivot_of.emplace(piv, survivors.size());
            survivors.push_back({i + 1, std::move(e)});
        }
        active = std::move(survivors);
    }
    for (const Active& a : active) bars.push_back({a.birth, n + 1});
    std::sort(bars.begin(), bars.end());
    return bars;
}

std::pair<int, Vec> GradedModule::apply_t(int grade, const Vec& v) const {
    if (grade < 0 || grade > length())
        throw IndexOutOfRange("grade " + std::to_string(grade) + " outside [0, " +
                              std::to_string(length()) + "]");
    if (static_cast<int>(v.size()) != dims[grade])
        throw InvariantViolation("vector length does not match its grade");
    if (grade == length()) return {grade + 1, Vec{}};  // zero component past the end
    return {grade + 1, t_action[grade].apply(v)};
}

Vec GradedModule::apply_t_power(int grade, Vec v, int power) const {
    int g = grade;
    for (int s = 0; s < power; ++s) {
        if (g > length()) return Vec{};
        auto [g2, w] = apply_t(g, v);
        g = g2;
        v = std::move(w);
        if (g > length()) return Vec{};
    }
    return v;
}

GradedModule alpha(const PersistenceModule& m) {
    m.validate();
    return GradedModule{m.dims, m.maps, m.modulus};
}

PersistenceModule persistent_page_module(const SpectralStack& stack, int r, int p, int q) {
    PersistenceModule m;
    m.modulus = stack.modulus();
    bool inside = p >= 0 && p <= stack.max_p() && q >= 0 && q <= stack.max_q();
    for (int i = 0; i <= stack.length(); ++i)
        m.dims.push_back(inside ? stack.page_at(i, r).dim(p, q) : 0);
    for (int i = 0; i < stack.length(); ++i)
        m.maps.push_back(inside ? stack.eta_at(i, r).matrix(p, q)
                                : Matrix(0, 0, stack.modulus()));
    m.validate();
    return m;
}

PersistenceModule direct_sum(const std::vector<PersistenceModule>& parts, std::uint32_t p) {
    PersistenceModule out;
    out.modulus = p;
    if (parts.empty()) {
        out.dims.push_back(0);
        return out;
    }
    int n = parts.front().length();
    for (const auto& part : parts)
        if (part.length() != n) throw InvariantViolation("direct_sum: length mismatch");
    for (int i = 0; i <= n; ++i) {
        int d = 0;
        for (const auto& part : parts) d += part.dims[i];
        out.dims.push_back(d);
    }
    for (int i = 0; i < n; ++i) {
        Matrix block(static_cast<std::size_t>(out.dims[i + 1]), static_cast<std::size_t>(out.dims[i]), p);
        std::size_t r0 = 0, c0 = 0;
        for (const auto& part : parts) {
            const Matrix& m = part.maps[i];
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (m.at(r, c)) block.set(r0 + r, c0 + c, m.at(r, c));
            r0 += m.rows();
            c0 += m.cols();
        }
        out.maps.push_back(std::move(block));
    }
    out.validate();
    return out;
}

PhCompareReport ph_compare(const SpectralStack& stack, const FilteredComplex& k) {
    PhCompareReport report;
    report.all_dims_equal = true;
    report.all_barcodes_agree = true;
    int n_max = std::max(stack.top_degree(), 0);
    for (int n = 0; n <= n_max; ++n) {
        DegreeComparison row;
        row.degree = n;
        row.dims_equal = true;
        for (int i = 0; i <= stack.length(); ++i) {
            int direct = cohomology_dim(k.slice(i), n, stack.modulus());
            int einf = 0;
            const Page& stable = stack.page_at(i, stack.r_infinity());
            for (int p = 0; p <= stack.max_p(); ++p) {
                int q = n - p;
                if (q >= 0 && q <= stack.max_q()) einf += stable.dim(p, q);
            }
            row.tower_dims.push_back(direct);
            row.einf_dims.push_back(einf);
            if (direct != einf) row.dims_equal = false;
        }
        row.oracle_barcode = interval_decomposition(oracle::direct_tower(k, n, stack.modulus()));
        std::vector<PersistenceModule> parts;
        for (int p = 0; p <= stack.max_p(); ++p) {
            int q = n - p;
            if (q >= 0 && q <= stack.max_q())
                parts.push_back(persistent_page_module(stack, stack.r_infinity(), p, q));
        }
        PersistenceModule assembled;
        if (parts.empty()) {
            assembled.modulus = stack.modulus();
            assembled.dims.assign(static_cast<std::size_t>(stack.length()) + 1, 0);
            assembled.maps.assign(static_cast<std::size_t>(stack.length()),
                                  Matrix(0, 0, stack.modulus()));
        } else {
            assembled = direct_sum(parts, stack.modulus());
        }
        row.spectral_barcode = interval_decomposition(assembled);
        row.barcodes_agree = row.oracle_barcode == row.spectral_barcode;
        report.all_dims_equal = report.all_dims_equal && row.dims_equal;
        report.all_barcodes_agree = report.all_barcodes_agree && row.barcodes_agree;
        report.degrees.push_back(std::move(row));
    }
    return report;
}

PhCompareReport ph_compare(const FilteredComplex& k, const CoverSystem& cover, std::uint32_t p) {
    return ph_compare(SpectralStack::build(k, cover, p), k);
}

}  // namespace leray
