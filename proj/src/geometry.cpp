#include "fsum/geometry.hpp"
#include "fsum/errors.hpp"

#include <sstream>

namespace fsum {

void require_same_dimension(int a, int b, const char* where) {
    if (a != b) {
        std::ostringstream os;
        os << where << ": dimension mismatch (" << a << " vs " << b << ")";
        throw std::invalid_argument(os.str());
    }
}

Point Point::zero(int dimension) {
    if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
    Coords c(static_cast<std::size_t>(dimension), Rational(0));
    return Point(std::move(c));
}

Point Point::operator+(const Point& other) const {
    require_same_dimension(dimension(), other.dimension(), "Point::operator+");
    Coords c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
    return Point(std::move(c));
}

Point Point::operator-(const Point& other) const {
    require_same_dimension(dimension(), other.dimension(), "Point::operator-");
    Coords c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coords_[i];
    return Point(std::move(c));
}

Point Point::operator-() const {
    Coords c(coords_);
    for (auto& v : c) v = -v;
    return Point(std::move(c));
}

Rational Point::norm_sq() const {
    Rational s(0);
    for (const auto& v : coords_) s += v * v;
    return s;
}

bool lex_less(const Point& x, const Point& y) {
    require_same_dimension(x.dimension(), y.dimension(), "lex_less");
    for (int i = 0; i < x.dimension(); ++i) {
        if (x[i] < y[i]) return true;
        if (y[i] < x[i]) return false;
    }
    return false;
}

Point parse_point(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw parse_error("empty point literal");
    if (s.front() != '(') return Point(Point::Coords{parse_rational(s)});
    if (s.back() != ')') throw parse_error("unterminated point literal: '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    Point::Coords coords;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = s.find(',', start);
        std::string_view item = comma == std::string_view::npos ? s.substr(start) : s.substr(start, comma - start);
        coords.push_back(parse_rational(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Point(std::move(coords));
}

std::string format_point(const Point& p) {
    std::string s = "(";
    for (int i = 0; i < p.dimension(); ++i) {
        if (i) s += ",";
        s += format_rational(p[i]);
    }
    return s + ")";
}

Matrix::Matrix(int dimension, std::vector<Rational> row_major)
    : dim_(dimension), entries_(std::move(row_major)) {
    if (dimension < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension))
        throw std::invalid_argument("matrix entry count does not match dimension");
}

Matrix Matrix::identity(int dimension) {
    std::vector<Rational> e(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension), Rational(0));
    for (int i = 0; i < dimension; ++i) e[static_cast<std::size_t>(i * dimension + i)] = 1;
    return Matrix(dimension, std::move(e));
}

Matrix Matrix::operator*(const Matrix& other) const {
    require_same_dimension(dim_, other.dim_, "Matrix::operator*");
    std::vector<Rational> e(entries_.size(), Rational(0));
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < dim_; ++j) e[static_cast<std::size_t>(i * dim_ + j)] += a * other.at(k, j);
        }
    return Matrix(dim_, std::move(e));
}

Point Matrix::operator*(const Point& p) const {
    require_same_dimension(dim_, p.dimension(), "Matrix * Point");
    Point::Coords c(static_cast<std::size_t>(dim_), Rational(0));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) c[static_cast<std::size_t>(i)] += at(i, j) * p[j];
    return Point(std::move(c));
}

Matrix Matrix::transpose() const {
    std::vector<Rational> e(entries_.size());
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) e[static_cast<std::size_t>(j * dim_ + i)] = at(i, j);
    return Matrix(dim_, std::move(e));
}

Matrix Matrix::inverse() const {
    int n = dim_;
    std::vector<Rational> a(entries_);
    std::vector<Rational> inv = identity(n).row_major();
    auto A = [&](int i, int j) -> Rational& { return a[static_cast<std::size_t>(i * n + j)]; };
    auto B = [&](int i, int j) -> Rational& { return inv[static_cast<std::size_t>(i * n + j)]; };
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (A(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) throw std::domain_error("Matrix::inverse: singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(A(pivot, j), A(col, j));
                std::swap(B(pivot, j), B(col, j));
            }
        Rational p = A(col, col);
        for (int j = 0; j < n; ++j) {
            A(col, j) /= p;
            B(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || A(r, col) == 0) continue;
            Rational factor = A(r, col);
            for (int j = 0; j < n; ++j) {
                A(r, j) -= factor * A(col, j);
                B(r, j) -= factor * B(col, j);
            }
        }
    }
    return Matrix(n, std::move(inv));
}

OrthoMatrix::OrthoMatrix(Matrix m) : m_(std::move(m)) {
    if (!(m_.transpose() * m_ == Matrix::identity(m_.dimension())))
        throw std::invalid_argument("OrthoMatrix: transpose(M)*M != I");
}

OrthoMatrix OrthoMatrix::identity(int dimension) { return OrthoMatrix(Matrix::identity(dimension)); }

OrthoMatrix OrthoMatrix::rotation2(const Rational& c, const Rational& s) {
    return OrthoMatrix(Matrix(2, {c, -s, s, c}));
}

OrthoMatrix OrthoMatrix::operator*(const OrthoMatrix& other) const {
    return OrthoMatrix(m_ * other.m_);
}

OrthoMatrix OrthoMatrix::transpose() const { return OrthoMatrix(m_.transpose()); }

OrthoMatrix OrthoMatrix::pow(int exponent) const {
    if (exponent < 0) throw std::invalid_argument("OrthoMatrix::pow: negative exponent");
    OrthoMatrix result = identity(dimension());
    for (int i = 0; i < exponent; ++i) result = result * *this;
    return result;
}

Point LinearPart::operator*(const Point& p) const {
    Point q = ortho * p;
    Point::Coords c(q.coords());
    for (auto& v : c) v *= ratio;
    return Point(std::move(c));
}

LinearPart LinearPart::operator*(const LinearPart& other) const {
    return LinearPart{ratio * other.ratio, ortho * other.ortho};
}

LinearPart LinearPart::pow(int exponent) const {
    if (exponent < 0) throw std::invalid_argument("LinearPart::pow: negative exponent");
    Rational r(1);
    for (int i = 0; i < exponent; ++i) r *= ratio;
    return LinearPart{r, ortho.pow(exponent)};
}

AffineMap::AffineMap(Rational ratio, OrthoMatrix ortho, Point shift)
    : linear_{std::move(ratio), std::move(ortho)}, shift_(std::move(shift)) {
    if (!(linear_.ratio > 0 && linear_.ratio < 1))
        throw std::invalid_argument("AffineMap: ratio must lie in (0,1)");
    require_same_dimension(linear_.ortho.dimension(), shift_.dimension(), "AffineMap");
}

Point AffineMap::fixed_point() const {
    int n = dimension();
    Matrix m = Matrix::identity(n);
    std::vector<Rational> e = m.row_major();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            e[static_cast<std::size_t>(i * n + j)] -= linear_.ratio * linear_.ortho.matrix().at(i, j);
    return Matrix(n, std::move(e)).inverse() * shift_;
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    require_same_dimension(f.dimension(), g.dimension(), "compose");
    return AffineMap(f.ratio() * g.ratio(), f.ortho() * g.ortho(), apply(f, g.shift()));
}

Point apply(const AffineMap& f, const Point& x) {
    require_same_dimension(f.dimension(), x.dimension(), "apply");
    return f.linear() * x + f.shift();
}

} // namespace fsum
