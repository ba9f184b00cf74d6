#include "tcone/coefficients.hpp"

#include <sstream>

#include "tcone/errors.hpp"

namespace tcone {

PolyInD::PolyInD(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

PolyInD PolyInD::constant(const BigInt& c) { return PolyInD({c}); }

PolyInD PolyInD::linear(const BigInt& a, const BigInt& b) { return PolyInD({b, a}); }

void PolyInD::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt PolyInD::evaluate(const BigInt& d) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + *it;
    return acc;
}

std::string PolyInD::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag;
        if (i >= 1) os << "d";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

PolyInD PolyInD::operator+(const PolyInD& o) const {
    std::vector<BigInt> r(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
    return PolyInD(std::move(r));
}

PolyInD PolyInD::operator-(const PolyInD& o) const {
    std::vector<BigInt> r(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] -= o.coeffs_[i];
    return PolyInD(std::move(r));
}

PolyInD PolyInD::operator*(const PolyInD& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return PolyInD(std::move(r));
}

namespace {

void check_mk(int m, int k) {
    if (m < 1 || k < 1 || k > m) {
        throw ArgumentError("coefficient index needs 1 <= k <= m, got m=" + std::to_string(m) +
                            ", k=" + std::to_string(k));
    }
}

}  // namespace

PolyInD pmk(int m, int k) {
    check_mk(m, k);
    const int half = (k + 1) / 2;
    PolyInD p = PolyInD::constant(1);
    for (int mm = k + 1; mm <= m; ++mm) p = p * PolyInD::linear(1, -2 * (mm - half));
    return p;
}

CoeffTable coeff_table(int m) {
    if (m < 1) throw ArgumentError("coefficient table needs m >= 1");
    std::vector<BigInt> row{1};
    for (int mm = 2; mm <= m; ++mm) {
        std::vector<BigInt> next(static_cast<std::size_t>(mm));
        next.front() = 1;
        next.back() = 1;
        for (int k = 2; k <= mm - 1; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            next[ku - 1] = (k % 2 == 0) ? row[ku - 2] : row[ku - 2] + row[ku - 1];
        }
        row = std::move(next);
    }
    return CoeffTable{m, std::move(row)};
}

BigInt cmk(int m, int k) {
    check_mk(m, k);
    return coeff_table(m).at(k);
}

bool verify_pmk_identity(int m) { return verify_pmk_identity(m, pmk); }

bool verify_pmk_identity(int m, const PmkSource& source) {
    for (int k = 2; k <= m; ++k) {
        const int sign = (k % 2 == 0) ? 1 : -1;
        const PolyInD factor = PolyInD::linear(1, -m + sign * (m - 2 * (k / 2)));
        if (!(source(m, k - 1) == factor * source(m, k))) return false;
    }
    return true;
}

bool verify_cmk_identity(int m) {
    const CoeffTable table = coeff_table(m);
    return verify_cmk_identity(m, [&table](int, int k) { return table.at(k); });
}

bool verify_cmk_identity(int m, const CmkSource& source) {
    for (int k = 2; k <= m - 1; ++k) {
        const BigInt lhs = BigInt(2 * (m - k)) * source(m, k);
        const BigInt mult = (k % 2 == 0) ? BigInt(k) : BigInt(2 * m - k - 1);
        if (lhs != mult * source(m, k + 1)) return false;
    }
    return true;
}

bool p1_product_check(int m) {
    PolyInD prod = PolyInD::constant(1);
    for (int j = 1; j <= m; ++j) prod = prod * PolyInD::linear(1, -2 * j);
    return pmk(m + 1, 1) == prod;
}

BigInt double_factorial(int n) {
    BigInt r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
}

std::string PiMultiple::to_string() const {
    std::ostringstream os;
    os << coeff;
    if (pi_power == 1) os << "*pi";
    if (pi_power > 1) os << "*pi^" << pi_power;
    return os.str();
}

PiMultiple source_multiplier(int m) {
    if (m < 0) throw ArgumentError("source multiplier needs m >= 0");
    const BigInt two_pow = BigInt(1) << (m + 1);
    return PiMultiple{BigRational(double_factorial(2 * m) * two_pow), m};
}

PiMultiple sigma_odd(int m) {
    if (m < 0) throw ArgumentError("sphere area needs m >= 0");
    const BigInt two_pow = BigInt(1) << (m + 1);
    return PiMultiple{BigRational(two_pow, double_factorial(2 * m - 1)), m};
}

bool sigma_identity_check(int m) {
    if (m < 1) throw ArgumentError("sigma identity needs m >= 1");
    const BigInt p = pmk(m + 1, 1).evaluate(2 * m + 1);
    if (p != double_factorial(2 * m - 1)) return false;
    const PiMultiple s = sigma_odd(m);
    const PiMultiple target{BigRational(BigInt(1) << (m + 1)), m};
    return PiMultiple{s.coeff * BigRational(p), s.pi_power} == target;
}

std::string format_pmk_table(int m_max) {
    std::ostringstream os;
    for (int m = 1; m <= m_max; ++m) {
        for (int k = 1; k <= m; ++k) {
            os << "P_" << m << "^" << k << "(d) = " << pmk(m, k).to_string() << "\n";
        }
    }
    return os.str();
}

std::string format_cmk_table(int m_max) {
    std::ostringstream os;
    for (int m = 1; m <= m_max; ++m) {
        const CoeffTable t = coeff_table(m);
        os << "m=" << m << ":";
        for (const auto& c : t.c) os << " " << c;
        os << "\n";
    }
    return os.str();
}

}  // namespace tcone
