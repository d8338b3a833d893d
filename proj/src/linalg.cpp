#include "kaczmarz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kaczmarz {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::not_hermitian: return "not_hermitian";
    case ErrorKind::not_positive: return "not_positive";
    case ErrorKind::singular: return "singular";
    case ErrorKind::non_periodic: return "non_periodic";
    case ErrorKind::hypothesis_violation: return "hypothesis_violation";
    case ErrorKind::grammian_not_positive: return "grammian_not_positive";
    case ErrorKind::span_deficiency: return "span_deficiency";
    case ErrorKind::not_almost_effective: return "not_almost_effective";
    case ErrorKind::oracle_disagreement: return "oracle_disagreement";
    case ErrorKind::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

const char* to_string(Field field)
{
    return field == Field::real ? "real" : "complex";
}

namespace {

// Imaginary parts this small (relative to the entries) are treated as
// roundoff when a value is tagged real.
constexpr double real_imag_slack = 1e-9;

template <typename Dense>
void strip_imaginary(Dense& values)
{
    const double scale = 1.0 + values.cwiseAbs().maxCoeff();
    const double worst = values.size() == 0 ? 0.0 : values.imag().cwiseAbs().maxCoeff();
    if (worst > real_imag_slack * scale) {
        throw Error(ErrorKind::invalid_argument,
                    "real-field value has imaginary part " + std::to_string(worst));
    }
    values = values.real().template cast<Scalar>();
}

Eigen::MatrixXd real_part(const Matrix& a) { return a.values().real(); }

Matrix lift(const Eigen::MatrixXd& a) { return Matrix(Field::real, a.cast<Scalar>()); }

void require_square(const Matrix& a, const char* what)
{
    if (!a.square()) {
        throw Error(ErrorKind::invalid_argument,
                    std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + ", expected square");
    }
}

void require_same_dim(Index a, Index b, const char* what)
{
    if (a != b) {
        throw Error(ErrorKind::invalid_argument,
                    std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Vector

Vector::Vector(Field field, CVector values) : field_(field), values_(std::move(values))
{
    if (field_ == Field::real && values_.size() > 0) {
        strip_imaginary(values_);
    }
}

Vector Vector::zeros(Field field, Index dim) { return Vector(field, CVector::Zero(dim)); }

Vector Vector::basis(Field field, Index dim, Index k)
{
    CVector v = CVector::Zero(dim);
    v[k] = 1.0;
    return Vector(field, std::move(v));
}

Vector Vector::real(std::initializer_list<double> values)
{
    CVector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) v[i++] = x;
    return Vector(Field::real, std::move(v));
}

Vector Vector::complex(std::initializer_list<Scalar> values)
{
    CVector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (Scalar x : values) v[i++] = x;
    return Vector(Field::complex, std::move(v));
}

Vector& Vector::operator+=(const Vector& other)
{
    common_field(field_, other.field_);
    require_same_dim(dim(), other.dim(), "vector sum");
    values_ += other.values_;
    return *this;
}

Vector& Vector::operator-=(const Vector& other)
{
    common_field(field_, other.field_);
    require_same_dim(dim(), other.dim(), "vector difference");
    values_ -= other.values_;
    return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }

Vector operator*(Scalar alpha, const Vector& v)
{
    if (v.field() == Field::real && alpha.imag() != 0.0) {
        throw Error(ErrorKind::invalid_argument, "complex scalar applied to a real vector");
    }
    return Vector(v.field(), alpha * v.values());
}

Vector operator-(const Vector& v) { return Vector(v.field(), -v.values()); }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(Field field, CMatrix values) : field_(field), values_(std::move(values))
{
    if (field_ == Field::real && values_.size() > 0) {
        strip_imaginary(values_);
    }
}

Matrix Matrix::identity(Field field, Index n) { return Matrix(field, CMatrix::Identity(n, n)); }

Matrix Matrix::zeros(Field field, Index rows, Index cols)
{
    return Matrix(field, CMatrix::Zero(rows, cols));
}

Matrix Matrix::real(std::initializer_list<std::initializer_list<double>> rows)
{
    const Index r = static_cast<Index>(rows.size());
    const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    CMatrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != c) {
            throw Error(ErrorKind::invalid_argument, "ragged matrix literal");
        }
        Index j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return Matrix(Field::real, std::move(m));
}

Matrix Matrix::diagonal(Field field, const Eigen::VectorXd& entries)
{
    return Matrix(field, entries.cast<Scalar>().asDiagonal());
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns)
{
    if (columns.empty()) {
        throw Error(ErrorKind::invalid_argument, "from_columns: no columns");
    }
    const Field field = columns.front().field();
    const Index dim = columns.front().dim();
    CMatrix m(dim, static_cast<Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        common_field(field, columns[j].field());
        require_same_dim(dim, columns[j].dim(), "from_columns");
        m.col(static_cast<Index>(j)) = columns[j].values();
    }
    return Matrix(field, std::move(m));
}

Vector Matrix::column(Index c) const { return Vector(field_, values_.col(c)); }

Matrix Matrix::adjoint() const { return Matrix(field_, values_.adjoint()); }

Matrix Matrix::block(Index r, Index c) const
{
    return Matrix(field_, values_.topLeftCorner(r, c));
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    const Field f = common_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::invalid_argument, "matrix sum: shape mismatch");
    }
    return Matrix(f, a.values() + b.values());
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    const Field f = common_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::invalid_argument, "matrix difference: shape mismatch");
    }
    return Matrix(f, a.values() - b.values());
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    const Field f = common_field(a.field(), b.field());
    require_same_dim(a.cols(), b.rows(), "matrix product");
    return Matrix(f, a.values() * b.values());
}

Matrix operator*(Scalar alpha, const Matrix& a)
{
    if (a.field() == Field::real && alpha.imag() != 0.0) {
        throw Error(ErrorKind::invalid_argument, "complex scalar applied to a real matrix");
    }
    return Matrix(a.field(), alpha * a.values());
}

Vector operator*(const Matrix& a, const Vector& v)
{
    const Field f = common_field(a.field(), v.field());
    require_same_dim(a.cols(), v.dim(), "matrix-vector product");
    return Vector(f, a.values() * v.values());
}

// ---------------------------------------------------------------------------
// Free functions

Field common_field(Field a, Field b)
{
    if (a != b) {
        throw Error(ErrorKind::invalid_argument,
                    std::string("field mismatch: ") + to_string(a) + " vs " + to_string(b));
    }
    return a;
}

Vector promote(const Vector& v, Field field)
{
    if (v.field() == field) return v;
    if (field == Field::real) {
        throw Error(ErrorKind::invalid_argument, "cannot demote a complex vector to real");
    }
    return Vector(Field::complex, v.values());
}

Matrix promote(const Matrix& a, Field field)
{
    if (a.field() == field) return a;
    if (field == Field::real) {
        throw Error(ErrorKind::invalid_argument, "cannot demote a complex matrix to real");
    }
    return Matrix(Field::complex, a.values());
}

Scalar inner_product(const Vector& u, const Vector& v)
{
    common_field(u.field(), v.field());
    require_same_dim(u.dim(), v.dim(), "inner product");
    // Eigen's dot conjugates its first argument.
    return v.values().dot(u.values());
}

double norm(const Vector& v) { return v.norm(); }

Matrix outer(const Vector& u, const Vector& v)
{
    const Field f = common_field(u.field(), v.field());
    return Matrix(f, u.values() * v.values().adjoint());
}

Eigen::VectorXd singular_values(const Matrix& a)
{
    if (a.rows() == 0 || a.cols() == 0) return Eigen::VectorXd();
    if (a.field() == Field::real) {
        return Eigen::JacobiSVD<Eigen::MatrixXd>(real_part(a)).singularValues();
    }
    return Eigen::JacobiSVD<CMatrix>(a.values()).singularValues();
}

double spectral_norm(const Matrix& a)
{
    const Eigen::VectorXd s = singular_values(a);
    return s.size() == 0 ? 0.0 : s[0];
}

double max_abs(const Matrix& a)
{
    return a.values().size() == 0 ? 0.0 : a.values().cwiseAbs().maxCoeff();
}

double hermitian_defect(const Matrix& a)
{
    require_square(a, "hermitian_defect");
    if (a.rows() == 0) return 0.0;
    return (a.values() - a.values().adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& a)
{
    require_square(a, "hermitian_part");
    return Matrix(a.field(), 0.5 * (a.values() + a.values().adjoint()));
}

EigDecomposition eig_hermitian(const Matrix& a, double tol)
{
    require_square(a, "eig_hermitian");
    const double defect = hermitian_defect(a);
    if (defect > tol * (1.0 + max_abs(a))) {
        throw Error(ErrorKind::not_hermitian,
                    "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const Matrix h = hermitian_part(a);
    if (a.field() == Field::real) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_part(h));
        return {solver.eigenvalues(), lift(solver.eigenvectors())};
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.values());
    return {solver.eigenvalues(), Matrix(Field::complex, solver.eigenvectors())};
}

Matrix positive_sqrt(const Matrix& a, double tol)
{
    EigDecomposition eig = eig_hermitian(a, tol);
    if (eig.eigenvalues.size() == 0) return a;
    const double scale = 1.0 + eig.eigenvalues.cwiseAbs().maxCoeff();
    if (eig.eigenvalues[0] < -tol * scale) {
        throw Error(ErrorKind::not_positive,
                    "matrix has eigenvalue " + std::to_string(eig.eigenvalues[0]));
    }
    const Eigen::VectorXd roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    const CMatrix& q = eig.eigenvectors.values();
    return Matrix(a.field(), q * roots.cast<Scalar>().asDiagonal() * q.adjoint());
}

PsdVerdict is_psd(const Matrix& a, double tol)
{
    require_square(a, "is_psd");
    PsdVerdict verdict;
    if (a.rows() == 0) return verdict;
    const Matrix h = hermitian_part(a);
    const EigDecomposition eig = eig_hermitian(h, tol);
    verdict.min_eigenvalue = eig.eigenvalues[0];
    const double threshold = tol * (1.0 + spectral_norm(a));
    if (verdict.min_eigenvalue < -threshold) {
        verdict.psd = false;
        verdict.witness = eig.eigenvectors.column(0);
    }
    return verdict;
}

Matrix pseudo_inverse(const Matrix& a, double tol)
{
    if (a.rows() == 0 || a.cols() == 0) return Matrix::zeros(a.field(), a.cols(), a.rows());
    auto build = [tol](const auto& svd, const auto& u, const auto& v) {
        using Mat = std::decay_t<decltype(u)>;
        const Eigen::VectorXd& s = svd.singularValues();
        const double cutoff = tol * s[0];
        Mat core = Mat::Zero(v.cols(), u.cols());
        for (Index i = 0; i < s.size(); ++i) {
            if (s[i] > cutoff && s[i] > 0.0) core(i, i) = 1.0 / s[i];
        }
        return Mat(v * core * u.adjoint());
    };
    if (a.field() == Field::real) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_part(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
        return lift(build(svd, svd.matrixU(), svd.matrixV()));
    }
    Eigen::JacobiSVD<CMatrix> svd(a.values(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    return Matrix(Field::complex, build(svd, svd.matrixU(), svd.matrixV()));
}

Matrix inverse(const Matrix& a, double tol)
{
    require_square(a, "inverse");
    const Eigen::VectorXd s = singular_values(a);
    if (s.size() > 0 && s[s.size() - 1] <= tol) {
        throw Error(ErrorKind::singular,
                    "matrix is singular (smallest singular value " +
                        std::to_string(s[s.size() - 1]) + ")");
    }
    if (a.field() == Field::real) {
        return lift(real_part(a).partialPivLu().inverse());
    }
    return Matrix(Field::complex, a.values().partialPivLu().inverse());
}

double spectral_radius(const Matrix& a)
{
    require_square(a, "spectral_radius");
    if (a.rows() == 0) return 0.0;
    if (a.field() == Field::real) {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(real_part(a), false);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(a.values(), false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Index rank(const Matrix& a, double tol)
{
    const Eigen::VectorXd s = singular_values(a);
    if (s.size() == 0 || s[0] == 0.0) return 0;
    return static_cast<Index>((s.array() > tol * s[0]).count());
}

Matrix orthonormal_range(const Matrix& a, double tol)
{
    if (a.rows() == 0 || a.cols() == 0) return Matrix::zeros(a.field(), a.rows(), 0);
    auto keep = [tol](const Eigen::VectorXd& s) {
        const double cutoff = tol * std::max(1.0, s[0]);
        return static_cast<Index>((s.array() > cutoff).count());
    };
    if (a.field() == Field::real) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_part(a), Eigen::ComputeThinU);
        return lift(svd.matrixU().leftCols(keep(svd.singularValues())));
    }
    Eigen::JacobiSVD<CMatrix> svd(a.values(), Eigen::ComputeThinU);
    return Matrix(Field::complex, svd.matrixU().leftCols(keep(svd.singularValues())));
}

} // namespace kaczmarz
