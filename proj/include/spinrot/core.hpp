#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace spinrot {

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using StateVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;
using StateVector = StateVectorT<double>;
using RealVector = Eigen::VectorXd;

// Bad user input. The CLI maps it to exit status 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical contract (Hermiticity, normalization, ...) was violated. Exit status 2.
class NumericalContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxTwoJ = 32;

class SpinJ {
public:
    constexpr SpinJ() = default;
    explicit SpinJ(int two_j);

    // "0.5", "1/2", "3", "3/2", "1.5"
    static SpinJ parse(std::string_view text);

    constexpr int two_j() const { return two_j_; }
    constexpr int dim() const { return two_j_ + 1; }
    constexpr double value() const { return 0.5 * two_j_; }
    // m_j of basis index k (index 0 is m_j = -J)
    constexpr double m(int k) const { return k - 0.5 * two_j_; }

    std::string str() const;

    friend constexpr bool operator==(SpinJ a, SpinJ b) { return a.two_j_ == b.two_j_; }

private:
    int two_j_ = 1;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace spinrot
