/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in the cyclotomic fields Q(zeta_N).
 *
 * An element of Q(zeta_N) is stored as a rational polynomial of degree
 * < phi(N) in the power basis 1, z, ..., z^(phi(N)-1), reduced modulo the
 * N-th cyclotomic polynomial. Since Phi_N is irreducible the reduced
 * coefficient vector is canonical, so equality and zero tests are plain
 * coefficient comparisons.
 *
 * Operands with different conductors are lifted to the lcm of the two
 * conductors (z_N = z_M^(M/N)).
 */
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hgraded/error.hpp"

namespace hgraded {

using Rational = mpq_class;

namespace detail {

// Integer polynomial, lowest degree first.
using IntPoly = std::vector<mpz_class>;

inline IntPoly compute_cyclotomic_polynomial(int n);

/// Memoized Phi_N. Concurrent first access is safe: the table is filled under
/// a mutex and entries are never mutated after insertion.
class CyclotomicTable {
public:
    static const IntPoly& get(int n) {
        static CyclotomicTable table;
        {
            std::lock_guard lock(table.mutex_);
            auto it = table.cache_.find(n);
            if (it != table.cache_.end()) return *it->second;
        }
        auto poly = std::make_shared<const IntPoly>(compute_cyclotomic_polynomial(n));
        std::lock_guard lock(table.mutex_);
        auto [it, inserted] = table.cache_.emplace(n, std::move(poly));
        return *it->second;
    }

private:
    std::mutex mutex_;
    std::map<int, std::shared_ptr<const IntPoly>> cache_;
};

// Exact division of integer polynomials; divisor must be monic.
inline IntPoly divide_monic(IntPoly dividend, const IntPoly& divisor) {
    const std::size_t dd = divisor.size() - 1;
    if (dividend.size() < divisor.size()) return {mpz_class(0)};
    IntPoly quotient(dividend.size() - dd);
    for (std::size_t i = dividend.size(); i-- > dd;) {
        mpz_class c = dividend[i];
        quotient[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) dividend[i - dd + j] -= c * divisor[j];
    }
    return quotient;
}

inline IntPoly compute_cyclotomic_polynomial(int n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    IntPoly result(static_cast<std::size_t>(n) + 1, mpz_class(0));
    result[0] = -1;
    result[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) result = divide_monic(std::move(result), CyclotomicTable::get(d));
    }
    return result;
}

inline int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace detail

/// Element of Q(zeta_N).
class Cyclotomic {
public:
    /// The rational 0 in Q.
    Cyclotomic() : conductor_(1), coeffs_(1) {}

    explicit Cyclotomic(Rational value, int conductor = 1) : conductor_(checked(conductor)) {
        coeffs_.assign(static_cast<std::size_t>(detail::euler_phi(conductor_)), Rational(0));
        coeffs_[0] = std::move(value);
        coeffs_[0].canonicalize();
    }

    Cyclotomic(long value) : Cyclotomic(Rational(value)) {}  // NOLINT: implicit from integers
    Cyclotomic(int value) : Cyclotomic(Rational(value)) {}   // NOLINT

    /// Builds from an arbitrary polynomial in z (lowest degree first), reducing it.
    static Cyclotomic from_polynomial(int conductor, std::vector<Rational> poly) {
        Cyclotomic c;
        c.conductor_ = checked(conductor);
        c.coeffs_ = std::move(poly);
        for (auto& q : c.coeffs_) q.canonicalize();
        c.reduce();
        return c;
    }

    static Cyclotomic root_of_unity(int n, long k) {
        checked(n);
        long e = k % n;
        if (e < 0) e += n;
        std::vector<Rational> poly(static_cast<std::size_t>(e) + 1, Rational(0));
        poly[static_cast<std::size_t>(e)] = 1;
        return from_polynomial(n, std::move(poly));
    }

    int conductor() const noexcept { return conductor_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    bool is_one() const {
        if (coeffs_[0] != 1) return false;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    /// Constant term; equals the value when is_rational().
    const Rational& rational_part() const { return coeffs_[0]; }

    /// Re-expresses this element in Q(zeta_m); m must be a multiple of the conductor.
    Cyclotomic lifted_to(int m) const {
        if (m == conductor_) return *this;
        if (m % conductor_ != 0) throw MathError("cannot lift conductor " + std::to_string(conductor_) +
                                                 " to " + std::to_string(m));
        const std::size_t step = static_cast<std::size_t>(m / conductor_);
        std::vector<Rational> poly((coeffs_.size() - 1) * step + 1, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * step] = coeffs_[i];
        return from_polynomial(m, std::move(poly));
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.conductor_ != b.conductor_) return binary_lifted(a, b, [](auto& x, auto& y) { return x + y; });
        Cyclotomic r = a;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.conductor_ != b.conductor_) return binary_lifted(a, b, [](auto& x, auto& y) { return x - y; });
        Cyclotomic r = a;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        return r;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.conductor_ != b.conductor_) return binary_lifted(a, b, [](auto& x, auto& y) { return x * y; });
        if (a.coeffs_.size() == 1) {
            Cyclotomic r = a;
            r.coeffs_[0] *= b.coeffs_[0];
            return r;
        }
        if (a.is_rational()) return b.scaled(a.coeffs_[0]);
        if (b.is_rational()) return a.scaled(b.coeffs_[0]);
        std::vector<Rational> poly(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j] == 0) continue;
                poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return from_polynomial(a.conductor_, std::move(poly));
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    Cyclotomic scaled(const Rational& s) const {
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    /// Multiplicative inverse, by solving the linear system (multiplication by *this) * y = 1.
    Cyclotomic inverse() const {
        if (is_zero()) throw MathError("division by zero in Q(zeta_" + std::to_string(conductor_) + ")");
        const std::size_t n = coeffs_.size();
        if (n == 1 || is_rational()) return Cyclotomic(Rational(1) / coeffs_[0], conductor_);
        // Column j of the matrix is (*this) * z^j.
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> poly(n + j, Rational(0));
            for (std::size_t i = 0; i < n; ++i) poly[i + j] = coeffs_[i];
            Cyclotomic col = from_polynomial(conductor_, std::move(poly));
            for (std::size_t i = 0; i < n; ++i) m[i][j] = col.coeffs_[i];
        }
        m[0][n] = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            while (pivot < n && m[pivot][c] == 0) ++pivot;
            if (pivot == n) throw MathError("singular multiplication matrix");  // unreachable in a field
            std::swap(m[c], m[pivot]);
            Rational inv = Rational(1) / m[c][c];
            for (std::size_t k = c; k <= n; ++k) m[c][k] *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || m[r][c] == 0) continue;
                Rational f = m[r][c];
                for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
            }
        }
        Cyclotomic r;
        r.conductor_ = conductor_;
        r.coeffs_.resize(n);
        for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = m[i][n];
        return r;
    }

    /// Complex conjugation, z -> z^(N-1).
    Cyclotomic conjugate() const {
        if (conductor_ <= 2) return *this;
        const std::size_t n = static_cast<std::size_t>(conductor_);
        std::vector<Rational> poly(n, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[(n - i) % n] += coeffs_[i];
        return from_polynomial(conductor_, std::move(poly));
    }

    Cyclotomic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic result(Rational(1), conductor_);
        Cyclotomic base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    std::complex<double> to_complex() const {
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / conductor_;
            sum += coeffs_[k].get_d() * std::polar(1.0, angle);
        }
        return sum;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.conductor_ != b.conductor_) {
            const int m = std::lcm(a.conductor_, b.conductor_);
            return a.lifted_to(m).coeffs_ == b.lifted_to(m).coeffs_;
        }
        return a.coeffs_ == b.coeffs_;
    }

    /// Polynomial in z, e.g. "z^2 - 1/2*z + 3". When 4 | N the power z^(N/4) is printed as i.
    std::string to_string() const {
        std::ostringstream out;
        bool first = true;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            std::string symbol;
            if (k > 0) {
                if (conductor_ % 4 == 0 && static_cast<int>(k) == conductor_ / 4) symbol = "i";
                else symbol = k == 1 ? "z" : "z^" + std::to_string(k);
            }
            Rational mag = abs(c);
            if (first) out << (c < 0 ? "-" : "");
            else out << (c < 0 ? " - " : " + ");
            if (symbol.empty()) out << detail::rational_to_string(mag);
            else if (mag == 1) out << symbol;
            else out << detail::rational_to_string(mag) << "*" << symbol;
            first = false;
        }
        return first ? "0" : out.str();
    }

private:
    static int checked(int n) {
        if (n < 1) throw MathError("cyclotomic conductor must be >= 1, got " + std::to_string(n));
        return n;
    }

    template <typename Op>
    static Cyclotomic binary_lifted(const Cyclotomic& a, const Cyclotomic& b, Op op) {
        const int m = std::lcm(a.conductor_, b.conductor_);
        Cyclotomic la = a.lifted_to(m);
        Cyclotomic lb = b.lifted_to(m);
        return op(la, lb);
    }

    void reduce() {
        const auto& phi = detail::CyclotomicTable::get(conductor_);
        const std::size_t deg = phi.size() - 1;
        for (std::size_t i = coeffs_.size(); i-- > deg;) {
            if (coeffs_[i] == 0) continue;
            Rational c = coeffs_[i];
            for (std::size_t j = 0; j < deg; ++j) {
                if (phi[j] != 0) coeffs_[i - deg + j] -= c * phi[j];
            }
            coeffs_[i] = 0;
        }
        coeffs_.resize(deg, Rational(0));
    }

    int conductor_;
    std::vector<Rational> coeffs_;
};

inline Cyclotomic root_of_unity(int n, long k) { return Cyclotomic::root_of_unity(n, k); }

inline std::complex<double> embed_complex(const Cyclotomic& a) { return a.to_complex(); }

}  // namespace hgraded
