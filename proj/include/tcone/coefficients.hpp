#pragma once

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tcone {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Univariate polynomial in the dimension symbol d with exact integer
/// coefficients; coeffs[i] multiplies d^i. The zero polynomial has no
/// coefficients, otherwise the leading coefficient is nonzero.
class PolyInD {
public:
    PolyInD() = default;
    explicit PolyInD(std::vector<BigInt> coeffs);

    static PolyInD constant(const BigInt& c);
    /// a*d + b.
    static PolyInD linear(const BigInt& a, const BigInt& b);

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree in d; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    BigInt evaluate(const BigInt& d) const;
    std::string to_string() const;

    PolyInD operator+(const PolyInD& o) const;
    PolyInD operator-(const PolyInD& o) const;
    PolyInD operator*(const PolyInD& o) const;
    bool operator==(const PolyInD& o) const = default;

private:
    void normalize();
    std::vector<BigInt> coeffs_;
};

/// P_m^k(d) from P_m^m = 1 and P_m^k = (d - 2(m - floor((k+1)/2))) P_{m-1}^k.
/// Throws ArgumentError unless 1 <= k <= m.
PolyInD pmk(int m, int k);

/// c_m^k from c_m^1 = c_m^m = 1 and, for 2 <= k <= m-1,
/// c_m^k = c_{m-1}^{k-1} (k even) or c_{m-1}^{k-1} + c_{m-1}^k (k odd).
/// Throws ArgumentError unless 1 <= k <= m.
BigInt cmk(int m, int k);

/// Row c_m^1 .. c_m^m (stored 0-based: c[k-1]).
struct CoeffTable {
    int m = 1;
    std::vector<BigInt> c;

    BigInt at(int k) const { return c.at(static_cast<std::size_t>(k - 1)); }
};

CoeffTable coeff_table(int m);

/// Supplies P_m^k or c_m^k; lets tests feed a deliberately broken table.
using PmkSource = std::function<PolyInD(int m, int k)>;
using CmkSource = std::function<BigInt(int m, int k)>;

/// P_m^{k-1} == ((d-m) + (-1)^k (m - 2 floor(k/2))) P_m^k for all 2 <= k <= m.
bool verify_pmk_identity(int m);
bool verify_pmk_identity(int m, const PmkSource& source);

/// 2(m-k) c_m^k == k c_m^{k+1} (k even) or (2m-k-1) c_m^{k+1} (k odd),
/// for all 2 <= k <= m-1.
bool verify_cmk_identity(int m);
bool verify_cmk_identity(int m, const CmkSource& source);

/// P_{m+1}^1 == prod_{j=1}^m (d - 2j), exactly.
bool p1_product_check(int m);

/// n!! with n!! = 1 for n <= 0.
BigInt double_factorial(int n);

/// Integer (or rational) coefficient times pi^power.
struct PiMultiple {
    BigRational coeff;
    int pi_power = 0;

    std::string to_string() const;
    bool operator==(const PiMultiple&) const = default;
};

/// (2m)!! 2^{m+1} pi^m, the source factor of the U_0 equation of order m.
PiMultiple source_multiplier(int m);

/// Unit-sphere area in odd dimension 2m+1: 2^{m+1} pi^m / (2m-1)!!.
PiMultiple sigma_odd(int m);

/// P_{m+1}^1(2m+1) == (2m-1)!! and sigma_{2m+1} P_{m+1}^1(2m+1) == 2^{m+1} pi^m.
bool sigma_identity_check(int m);

/// Lower-triangular tables of P_m^k and c_m^k for 1 <= k <= m <= m_max.
std::string format_pmk_table(int m_max);
std::string format_cmk_table(int m_max);

}  // namespace tcone
