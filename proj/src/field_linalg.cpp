#include "leray/field_linalg.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace leray {

namespace {

std::uint32_t reduce_mod(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint32_t pow_mod(std::uint32_t base, std::uint32_t exp, std::uint32_t p) {
    std::uint64_t acc = 1, b = base % p;
    while (exp) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw InvariantViolation("division by zero in F_" + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

void require_same_modulus(std::uint32_t a, std::uint32_t b, const char* where) {
    if (a != b)
        throw InvariantViolation(std::string(where) + ": mixed moduli " + std::to_string(a) +
                                 " and " + std::to_string(b));
}

// Row echelon worker shared by rank/solve/kernel.  Reduces `work` (rows x cols,
// mod p) in place to reduced row echelon form and returns the pivot column of
// each pivot row in order.
std::vector<std::size_t> rref(std::vector<Vec>& work, std::uint32_t p) {
    std::vector<std::size_t> pivot_cols;
    std::size_t rows = work.size();
    std::size_t cols = rows ? work[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t rr = r; rr < rows; ++rr)
            if (work[rr][c] != 0) { pivot = rr; break; }
        if (pivot == rows) continue;
        std::swap(work[r], work[pivot]);
        std::uint32_t inv = inv_mod(work[r][c], p);
        for (std::size_t cc = c; cc < cols; ++cc) work[r][cc] = mul_mod(work[r][cc], inv, p);
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || work[rr][c] == 0) continue;
            std::uint32_t f = work[rr][c];
            for (std::size_t cc = c; cc < cols; ++cc)
                work[rr][cc] = sub_mod(work[rr][cc], mul_mod(f, work[r][cc], p), p);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

std::vector<Vec> to_rows(const Matrix& m) {
    std::vector<Vec> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);
    return rows;
}

// Incremental column-space tracker.  Columns are reduced top-down against the
// stored pivots; insertion order decides which columns count as new.
class ColumnReducer {
public:
    ColumnReducer(std::size_t ambient, std::uint32_t p) : ambient_(ambient), mod_(p) {}

    bool insert(const Vec& v) {
        Vec r = reduce_full(v);
        std::size_t piv = first_nonzero(r);
        if (piv == ambient_) return false;
        std::uint32_t inv = inv_mod(r[piv], mod_);
        for (std::size_t j = piv; j < ambient_; ++j) r[j] = mul_mod(r[j], inv, mod_);
        by_pivot_.emplace(piv, std::move(r));
        return true;
    }

    int rank() const { return static_cast<int>(by_pivot_.size()); }

private:
    Vec reduce_full(Vec v) const {
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (v[i] == 0) continue;
            auto it = by_pivot_.find(i);
            if (it == by_pivot_.end()) continue;
            std::uint32_t f = v[i];
            const Vec& w = it->second;
            for (std::size_t j = i; j < ambient_; ++j)
                v[j] = sub_mod(v[j], mul_mod(f, w[j], mod_), mod_);
        }
        return v;
    }

    std::size_t first_nonzero(const Vec& v) const {
        for (std::size_t i = 0; i < ambient_; ++i)
            if (v[i] != 0) return i;
        return ambient_;
    }

    std::size_t ambient_;
    std::uint32_t mod_;
    std::map<std::size_t, Vec> by_pivot_;
};

}  // namespace

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldElem::FieldElem(std::int64_t value, std::uint32_t p) : mod_(p) {
    if (!is_prime(p)) throw InvariantViolation("modulus " + std::to_string(p) + " is not prime");
    value_ = reduce_mod(value, p);
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    require_same_modulus(mod_, o.mod_, "FieldElem::operator+");
    return FieldElem(add_mod(value_, o.value_, mod_), mod_);
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    require_same_modulus(mod_, o.mod_, "FieldElem::operator-");
    return FieldElem(sub_mod(value_, o.value_, mod_), mod_);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    require_same_modulus(mod_, o.mod_, "FieldElem::operator*");
    return FieldElem(mul_mod(value_, o.value_, mod_), mod_);
}

FieldElem FieldElem::operator-() const { return FieldElem(sub_mod(0, value_, mod_), mod_); }

FieldElem FieldElem::inverse() const { return FieldElem(inv_mod(value_, mod_), mod_); }

bool FieldElem::operator==(const FieldElem& o) const {
    require_same_modulus(mod_, o.mod_, "FieldElem::operator==");
    return value_ == o.value_;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), mod_(p), data_(rows * cols, 0) {
    if (!is_prime(p)) throw InvariantViolation("modulus " + std::to_string(p) + " is not prime");
}

Matrix Matrix::identity(std::size_t n, std::uint32_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols, std::uint32_t p) {
    Matrix m(rows, cols.size(), p);
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::int64_t v) {
    data_[r * cols_ + c] = reduce_mod(v, mod_);
}

void Matrix::add_at(std::size_t r, std::size_t c, std::int64_t v) {
    data_[r * cols_ + c] = reduce_mod(static_cast<std::int64_t>(data_[r * cols_ + c]) + v, mod_);
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void Matrix::set_column(std::size_t c, const Vec& v) {
    if (v.size() != rows_) throw InvariantViolation("set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) data_[r * cols_ + c] = v[r] % mod_;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_modulus(mod_, o.mod_, "Matrix::operator*");
    if (cols_ != o.rows_) throw InvariantViolation("Matrix::operator*: shape mismatch");
    Matrix out(rows_, o.cols_, mod_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint32_t a = at(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) {
                std::uint32_t b = o.at(k, c);
                if (b == 0) continue;
                out.data_[r * out.cols_ + c] =
                    add_mod(out.data_[r * out.cols_ + c], mul_mod(a, b, mod_), mod_);
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_modulus(mod_, o.mod_, "Matrix::operator+");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvariantViolation("Matrix::operator+: shape mismatch");
    Matrix out(rows_, cols_, mod_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = add_mod(data_[i], o.data_[i], mod_);
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same_modulus(mod_, o.mod_, "Matrix::operator-");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvariantViolation("Matrix::operator-: shape mismatch");
    Matrix out(rows_, cols_, mod_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], o.data_[i], mod_);
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && mod_ == o.mod_ && data_ == o.data_;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw InvariantViolation("Matrix::apply: length mismatch");
    Vec out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            acc += static_cast<std::uint64_t>(at(r, c)) * v[c] % mod_;
        out[r] = static_cast<std::uint32_t>(acc % mod_);
    }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (at(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
    Matrix out(rows.size(), cols_, mod_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c) out.set(i, c, at(rows[i], c));
    return out;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    require_same_modulus(a.modulus(), b.modulus(), "hconcat");
    if (a.rows() != b.rows()) throw InvariantViolation("hconcat: row mismatch");
    Matrix out(a.rows(), a.cols() + b.cols(), a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
        for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.at(r, c));
    }
    return out;
}

int rank(const Matrix& m) {
    auto work = to_rows(m);
    return static_cast<int>(rref(work, m.modulus()).size());
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw InvariantViolation("solve: rhs length mismatch");
    std::vector<Vec> work(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        work[r] = a.row(r);
        work[r].push_back(b[r] % a.modulus());
    }
    auto pivots = rref(work, a.modulus());
    // a pivot in the augmented column means inconsistency
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vec x(a.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = work[r][a.cols()];
    return x;
}

Matrix kernel_basis(const Matrix& m) {
    auto work = to_rows(m);
    auto pivots = rref(work, m.modulus());
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::uint32_t coeff = work[r][f];
            if (coeff != 0) v[pivots[r]] = m.modulus() - coeff;
        }
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), basis, m.modulus());
}

Matrix column_space_basis(const Matrix& m) {
    ColumnReducer red(m.rows(), m.modulus());
    std::vector<Vec> kept;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Vec v = m.column(c);
        if (red.insert(v)) kept.push_back(std::move(v));
    }
    return Matrix::from_columns(m.rows(), kept, m.modulus());
}

bool column_space_contains(const Matrix& a, const Matrix& b) {
    require_same_modulus(a.modulus(), b.modulus(), "column_space_contains");
    if (a.rows() != b.rows()) throw InvariantViolation("column_space_contains: row mismatch");
    for (std::size_t c = 0; c < b.cols(); ++c)
        if (!solve(a, b.column(c))) return false;
    return true;
}

Matrix intersect_column_spaces(const Matrix& a, const Matrix& b) {
    // kernel of [a | b] yields pairs (x, y) with a x = -b y, i.e. the
    // intersection vectors a x
    Matrix joint = hconcat(a, b);
    Matrix ker = kernel_basis(joint);
    std::vector<Vec> vectors;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        Vec x(a.cols());
        Vec full = ker.column(c);
        for (std::size_t i = 0; i < a.cols(); ++i) x[i] = full[i];
        vectors.push_back(a.apply(x));
    }
    return column_space_basis(Matrix::from_columns(a.rows(), vectors, a.modulus()));
}

Subquotient::Subquotient(std::size_t ambient_dim, Matrix z, Matrix b)
    : ambient_(ambient_dim), mod_(z.modulus()), z_(std::move(z)), b_(std::move(b)) {
    require_same_modulus(z_.modulus(), b_.modulus(), "Subquotient");
    if (z_.rows() != ambient_ || b_.rows() != ambient_)
        throw InvariantViolation("Subquotient: ambient dimension mismatch");
    if (!column_space_contains(z_, b_))
        throw InvariantViolation("Subquotient: span(B) not contained in span(Z)");
    ColumnReducer red(ambient_, mod_);
    std::vector<Vec> b_basis;
    for (std::size_t c = 0; c < b_.cols(); ++c) {
        Vec v = b_.column(c);
        if (red.insert(v)) b_basis.push_back(std::move(v));
    }
    int rank_b = red.rank();
    std::vector<Vec> reps;
    for (std::size_t c = 0; c < z_.cols(); ++c) {
        Vec v = z_.column(c);
        if (red.insert(v)) reps.push_back(std::move(v));
    }
    dim_ = red.rank() - rank_b;
    reps_ = Matrix::from_columns(ambient_, reps, mod_);
    coord_system_ = hconcat(reps_, Matrix::from_columns(ambient_, b_basis, mod_));
}

Subquotient Subquotient::zero(std::size_t ambient_dim, std::uint32_t p) {
    return Subquotient(ambient_dim, Matrix(ambient_dim, 0, p), Matrix(ambient_dim, 0, p));
}

std::optional<Vec> Subquotient::try_coords(const Vec& ambient_vector) const {
    auto x = solve(coord_system_, ambient_vector);
    if (!x) return std::nullopt;
    return Vec(x->begin(), x->begin() + dim_);
}

Vec Subquotient::coords(const Vec& ambient_vector) const {
    auto c = try_coords(ambient_vector);
    if (!c) throw InvariantViolation("Subquotient::coords: vector outside span(Z)");
    return *c;
}

int subquotient_dim(const Subquotient& s) { return s.dim(); }

Matrix induced_map(const Subquotient& source, const Subquotient& target, const Matrix& map) {
    require_same_modulus(source.modulus(), map.modulus(), "induced_map");
    require_same_modulus(target.modulus(), map.modulus(), "induced_map");
    if (map.cols() != source.ambient_dim() || map.rows() != target.ambient_dim())
        throw InvariantViolation("induced_map: map shape does not match ambients");
    const Matrix& sb = source.boundaries();
    for (std::size_t c = 0; c < sb.cols(); ++c)
        if (!solve(target.boundaries(), map.apply(sb.column(c))))
            throw NotWellDefined("induced_map: image of a boundary is not a boundary");
    Matrix out(static_cast<std::size_t>(target.dim()), static_cast<std::size_t>(source.dim()),
               map.modulus());
    for (int k = 0; k < source.dim(); ++k) {
        Vec image = map.apply(source.representatives().column(static_cast<std::size_t>(k)));
        auto coords = target.try_coords(image);
        if (!coords) throw NotWellDefined("induced_map: image of a cycle is not a cycle");
        out.set_column(static_cast<std::size_t>(k), *coords);
    }
    return out;
}

}  // namespace leray
