#pragma once

/// Exact rational points, orthogonal matrices, and affine contractions
/// x |-> ratio * O * x + shift, with composition. Everything is immutable
/// after construction and safe to share across threads.

#include "fsum/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fsum {

class Point {
public:
    using Coords = boost::container::small_vector<Rational, 2>;

    Point() = default;
    explicit Point(Coords coords) : coords_(std::move(coords)) {}
    explicit Point(std::vector<Rational> coords) : coords_(coords.begin(), coords.end()) {}
    static Point zero(int dimension);

    int dimension() const { return static_cast<int>(coords_.size()); }
    const Rational& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    const Coords& coords() const { return coords_; }

    Point operator+(const Point& other) const;
    Point operator-(const Point& other) const;
    Point operator-() const;
    bool operator==(const Point& other) const = default;

    /// Squared Euclidean norm, exact.
    Rational norm_sq() const;

private:
    Coords coords_;
};

/// Strict lexicographic order: x before y iff the first differing
/// coordinate of x is smaller. Total on distinct points of equal dimension.
bool lex_less(const Point& x, const Point& y);

struct PointLexLess {
    bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

/// "(1/3,-2/5)" text form. parse_point also accepts a bare rational for d=1.
Point parse_point(std::string_view text);
std::string format_point(const Point& p);

/// Square rational matrix; exact arithmetic throughout.
class Matrix {
public:
    Matrix() = default;
    Matrix(int dimension, std::vector<Rational> row_major);
    static Matrix identity(int dimension);

    int dimension() const { return dim_; }
    const Rational& at(int row, int col) const { return entries_[static_cast<std::size_t>(row * dim_ + col)]; }
    const std::vector<Rational>& row_major() const { return entries_; }

    Matrix operator*(const Matrix& other) const;
    Point operator*(const Point& p) const;
    Matrix transpose() const;
    /// Inverse via Gauss-Jordan elimination; throws if singular.
    Matrix inverse() const;
    bool operator==(const Matrix& other) const = default;

private:
    int dim_ = 0;
    std::vector<Rational> entries_;
};

/// Matrix with the exact invariant transpose(M) * M = I, checked at
/// construction. Rational orthogonal matrices: signed permutations,
/// quarter-turn rotations, Pythagorean rotations like (3/5, 4/5).
class OrthoMatrix {
public:
    explicit OrthoMatrix(Matrix m);
    static OrthoMatrix identity(int dimension);
    static OrthoMatrix rotation2(const Rational& cos_entry, const Rational& sin_entry);

    int dimension() const { return m_.dimension(); }
    const Matrix& matrix() const { return m_; }
    Point operator*(const Point& p) const { return m_ * p; }
    OrthoMatrix operator*(const OrthoMatrix& other) const;
    OrthoMatrix transpose() const;
    OrthoMatrix pow(int exponent) const; // exponent >= 0
    bool operator==(const OrthoMatrix& other) const = default;

private:
    Matrix m_;
};

/// Shared linear part ratio * O of a similarity; ratio > 0 but not
/// restricted to contractions (powers and inverses need ratio = 1 or more).
struct LinearPart {
    Rational ratio;
    OrthoMatrix ortho;

    int dimension() const { return ortho.dimension(); }
    Point operator*(const Point& p) const;
    LinearPart operator*(const LinearPart& other) const;
    LinearPart pow(int exponent) const;
    bool operator==(const LinearPart& other) const = default;
};

/// Contracting similarity x |-> ratio * O * x + shift with 0 < ratio < 1.
class AffineMap {
public:
    AffineMap(Rational ratio, OrthoMatrix ortho, Point shift);

    int dimension() const { return shift_.dimension(); }
    const Rational& ratio() const { return linear_.ratio; }
    const OrthoMatrix& ortho() const { return linear_.ortho; }
    const LinearPart& linear() const { return linear_; }
    const Point& shift() const { return shift_; }

    bool operator==(const AffineMap& other) const = default;

    /// Exact rational fixed point (I - ratio*O)^-1 * shift.
    Point fixed_point() const;

private:
    LinearPart linear_;
    Point shift_;
};

/// (f o g)(x) = f(g(x)); result ratio = ratio(f)*ratio(g), ortho product,
/// shift = f(shift(g)).
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// Exact evaluation ratio * O * x + shift.
Point apply(const AffineMap& f, const Point& x);

void require_same_dimension(int a, int b, const char* where);

} // namespace fsum
