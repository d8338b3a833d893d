#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "kaczmarz/error.hpp"

namespace kaczmarz {

using Index = Eigen::Index;
using Scalar = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Scalar field of the ambient space. Entries are always stored as complex
/// doubles; a real-field object keeps every imaginary part at exactly zero.
enum class Field { real, complex };

const char* to_string(Field field);

/// Dense vector in a finite-dimensional inner-product space.
class Vector {
public:
    Vector() = default;

    /// Real-field inputs may carry roundoff-level imaginary parts; those are
    /// dropped. Anything larger is rejected.
    Vector(Field field, CVector values);

    static Vector zeros(Field field, Index dim);
    static Vector basis(Field field, Index dim, Index k);
    static Vector real(std::initializer_list<double> values);
    static Vector complex(std::initializer_list<Scalar> values);

    Field field() const noexcept { return field_; }
    Index dim() const noexcept { return values_.size(); }
    const CVector& values() const noexcept { return values_; }
    Scalar operator[](Index i) const { return values_[i]; }

    double norm() const { return values_.stableNorm(); }

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);

private:
    Field field_ = Field::real;
    CVector values_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(Scalar alpha, const Vector& v);
Vector operator-(const Vector& v);

/// Dense matrix. Square matrices act as operators on the space; rectangular
/// ones appear only as synthesis matrices.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field field, CMatrix values);

    static Matrix identity(Field field, Index n);
    static Matrix zeros(Field field, Index rows, Index cols);
    static Matrix real(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix diagonal(Field field, const Eigen::VectorXd& entries);
    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(const std::vector<Vector>& columns);

    Field field() const noexcept { return field_; }
    Index rows() const noexcept { return values_.rows(); }
    Index cols() const noexcept { return values_.cols(); }
    bool square() const noexcept { return rows() == cols(); }
    const CMatrix& values() const noexcept { return values_; }
    Scalar operator()(Index r, Index c) const { return values_(r, c); }

    Vector column(Index c) const;
    Matrix adjoint() const;
    Matrix block(Index rows, Index cols) const;

private:
    Field field_ = Field::real;
    CMatrix values_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Scalar alpha, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& v);

/// Throws invalid_argument when the fields differ.
Field common_field(Field a, Field b);
/// Re-tags a real object as complex (the other direction is rejected).
Vector promote(const Vector& v, Field field);
Matrix promote(const Matrix& a, Field field);

/// <u, v>: linear in u, conjugate-linear in v.
Scalar inner_product(const Vector& u, const Vector& v);
double norm(const Vector& v);
/// u v* as a matrix, so that (u v*) x = <x, v> u.
Matrix outer(const Vector& u, const Vector& v);

double spectral_norm(const Matrix& a);
double max_abs(const Matrix& a);
/// max |a_ij - conj(a_ji)|
double hermitian_defect(const Matrix& a);
Matrix hermitian_part(const Matrix& a);

constexpr double default_tolerance = 1e-10;

struct EigDecomposition {
    Eigen::VectorXd eigenvalues;  ///< ascending
    Matrix eigenvectors;          ///< orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Real-field input yields real
/// eigenvectors.
EigDecomposition eig_hermitian(const Matrix& a, double tol = default_tolerance);

/// Positive square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues in [-tol(1+|A|), 0) are clamped to zero; anything more
/// negative is an error.
Matrix positive_sqrt(const Matrix& a, double tol = default_tolerance);

struct PsdVerdict {
    bool psd = true;
    double min_eigenvalue = 0.0;  ///< of the Hermitian part
    std::optional<Vector> witness;  ///< set when psd is false; <Au,u> < 0
};

/// <Au,u> >= 0 for all u, decided on the Hermitian part (A + A*)/2. The
/// matrix need not be Hermitian.
PsdVerdict is_psd(const Matrix& a, double tol = default_tolerance);

/// Moore-Penrose inverse; singular values below tol * sigma_max count as zero.
Matrix pseudo_inverse(const Matrix& a, double tol = default_tolerance);

/// Inverse of a square matrix; throws singular when the smallest singular
/// value is at most tol.
Matrix inverse(const Matrix& a, double tol = default_tolerance);

double spectral_radius(const Matrix& a);

/// Singular values, descending.
Eigen::VectorXd singular_values(const Matrix& a);

/// Numerical rank with threshold tol * sigma_max.
Index rank(const Matrix& a, double tol = default_tolerance);

/// Orthonormal basis (as columns) of the column space; columns with singular
/// value below tol * max(1, sigma_max) are discarded.
Matrix orthonormal_range(const Matrix& a, double tol = default_tolerance);

} // namespace kaczmarz
