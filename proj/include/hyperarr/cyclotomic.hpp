#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hyperarr/errors.hpp"
#include "hyperarr/polynomial.hpp"
#include "hyperarr/rational.hpp"

namespace hyperarr {

/// Euler's totient.
inline unsigned long totient(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// N-th cyclotomic polynomial, via exact division of x^N - 1 by the Phi_d of
/// the proper divisors d of N. Results are cached process-wide.
inline const CharPoly& cyclotomic_poly(unsigned long n) {
    if (n == 0) throw usage_error("cyclotomic_poly: order must be positive");
    static std::map<unsigned long, CharPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto compute = [&](auto&& self, unsigned long m) -> const CharPoly& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        CharPoly p = CharPoly::power(m) - CharPoly::constant(Int(1));
        for (unsigned long d = 1; d < m; ++d)
            if (m % d == 0) p = exact_quotient(p, self(self, d));
        return cache.emplace(m, std::move(p)).first->second;
    };
    return compute(compute, n);
}

namespace detail {

// Per-order data shared by all Cyc values: phi(N), Phi_N, and reduction rows
// expressing x^m mod Phi_N for m = phi..max(2phi-2, N-1). Rows are integral
// because Phi_N is monic over Z.
struct CycContext {
    unsigned long order;
    unsigned long phi;
    CharPoly minimal_poly;
    std::vector<std::vector<Int>> power_rows; // power_rows[m - phi] = x^m mod Phi_N

    explicit CycContext(unsigned long n) : order(n), phi(totient(n)), minimal_poly(cyclotomic_poly(n)) {
        const unsigned long max_power = std::max(2 * phi >= 2 ? 2 * phi - 2 : 0, n - 1);
        if (max_power < phi) return;
        std::vector<Int> row(phi, Int(0));
        for (unsigned long i = 0; i < phi; ++i) row[i] = -minimal_poly.coeffs[i];
        power_rows.push_back(row);
        for (unsigned long m = phi + 1; m <= max_power; ++m) {
            std::vector<Int> next(phi, Int(0));
            const Int& top = row[phi - 1];
            for (unsigned long i = 0; i < phi; ++i) {
                if (i > 0) next[i] = row[i - 1];
                next[i] -= top * minimal_poly.coeffs[i];
            }
            row = next;
            power_rows.push_back(row);
        }
    }

    // x^m mod Phi_N as a dense coefficient row of length phi, valid for m <= max_power
    const std::vector<Int>& power(unsigned long m) const { return power_rows[m - phi]; }
};

inline std::shared_ptr<const CycContext> cyc_context(unsigned long n) {
    static std::map<unsigned long, std::shared_ptr<const CycContext>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_shared<CycContext>(n)).first;
    return it->second;
}

} // namespace detail

/// Element of the cyclotomic field Q(zeta_N), stored as its unique
/// representative in the power basis of Q[x]/(Phi_N): coeffs has length
/// exactly phi(N) and coeffs[i] multiplies zeta_N^i. Orders N = 1, 2 carry
/// plain rationals (phi = 1). Values are immutable in spirit: every operation
/// returns a fresh value.
class Cyc {
public:
    Cyc() : Cyc(1) {}
    explicit Cyc(unsigned long order)
        : order_(order), coeffs_(checked_phi(order), Rat(0)) {}
    Cyc(unsigned long order, std::vector<Rat> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != checked_phi(order_))
            throw usage_error("Cyc: coefficient vector must have length phi(order)");
    }

    static Cyc from_rat(Rat q, unsigned long order = 1) {
        Cyc c(order);
        c.coeffs_[0] = std::move(q);
        return c;
    }

    unsigned long order() const { return order_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const Rat& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    bool is_one() const {
        if (coeffs_[0] != 1) return false;
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }
    /// The rational value when the element lies in Q, else nullopt.
    std::optional<Rat> as_rat() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return std::nullopt;
        return coeffs_[0];
    }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        auto r = matched(a, b, "cyc_add");
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return r;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        auto r = matched(a, b, "cyc_sub");
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return r;
    }
    friend Cyc operator-(const Cyc& a) {
        Cyc r(a.order_);
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = -a.coeffs_[i];
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        auto r = matched(a, b, "cyc_mul");
        const std::size_t phi = r.coeffs_.size();
        std::vector<Rat> conv(2 * phi - 1, Rat(0));
        for (std::size_t i = 0; i < phi; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < phi; ++j) {
                if (b.coeffs_[j] == 0) continue;
                conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        const auto ctx = detail::cyc_context(a.order_);
        for (std::size_t m = 2 * phi - 2; m >= phi && m != static_cast<std::size_t>(-1); --m) {
            if (conv[m] == 0) continue;
            const auto& row = ctx->power(m);
            for (std::size_t i = 0; i < phi; ++i)
                if (row[i] != 0) conv[i] += conv[m] * Rat(row[i]);
            conv[m] = 0;
            if (m == phi) break;
        }
        conv.resize(phi);
        r.coeffs_ = std::move(conv);
        return r;
    }
    friend Cyc operator*(const Cyc& a, const Rat& s) {
        Cyc r(a.order_);
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] * s;
        return r;
    }

    /// Compact canonical string, used for hyperplane ordering and memo keys.
    std::string key() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ",";
            s += rat_to_string(coeffs_[i]);
        }
        return s;
    }

private:
    static unsigned long checked_phi(unsigned long order) {
        if (order == 0) throw usage_error("Cyc: order must be positive");
        return totient(order);
    }
    static Cyc matched(const Cyc& a, const Cyc& b, const char* op) {
        if (a.order_ != b.order_)
            throw usage_error(std::string(op) + ": order mismatch (" + std::to_string(a.order_) +
                              " vs " + std::to_string(b.order_) + "); promote first");
        return Cyc(a.order_);
    }

    unsigned long order_;
    std::vector<Rat> coeffs_;
};

/// zeta_N^k, with k taken modulo N. zeta(N, 0) is the multiplicative identity.
inline Cyc zeta(unsigned long n, long k = 1) {
    if (n == 0) throw usage_error("zeta: order must be positive");
    long e = k % static_cast<long>(n);
    if (e < 0) e += static_cast<long>(n);
    const auto ctx = detail::cyc_context(n);
    Cyc r(n);
    std::vector<Rat> coeffs(ctx->phi, Rat(0));
    if (static_cast<unsigned long>(e) < ctx->phi) {
        coeffs[e] = 1;
    } else {
        const auto& row = ctx->power(static_cast<unsigned long>(e));
        for (unsigned long i = 0; i < ctx->phi; ++i) coeffs[i] = Rat(row[i]);
    }
    return Cyc(n, std::move(coeffs));
}

namespace detail {

// Rational polynomials for the extended Euclidean algorithm behind cyc_inv.
using QPoly = std::vector<Rat>; // index = degree

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_sub_mul(QPoly a, const QPoly& b, const QPoly& q) {
    // a - b*q
    if (!b.empty() && !q.empty()) {
        if (a.size() < b.size() + q.size() - 1) a.resize(b.size() + q.size() - 1, Rat(0));
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) a[i + j] -= b[i] * q[j];
    }
    qp_trim(a);
    return a;
}

inline std::pair<QPoly, QPoly> qp_divrem(QPoly num, const QPoly& den) {
    QPoly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        const std::size_t shift = num.size() - den.size();
        Rat c = num.back() / den.back();
        quot[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        qp_trim(num);
    }
    qp_trim(quot);
    return {std::move(quot), std::move(num)};
}

} // namespace detail

/// Multiplicative inverse in Q(zeta_N) via the extended Euclidean algorithm
/// on (representative, Phi_N) in Q[x]. Throws on zero.
inline Cyc cyc_inv(const Cyc& a) {
    if (a.is_zero()) throw usage_error("cyc_inv: division by zero");
    if (auto q = a.as_rat()) return Cyc::from_rat(Rat(1) / *q, a.order());
    using detail::QPoly;
    const auto& phi_poly = cyclotomic_poly(a.order());
    QPoly r0(phi_poly.coeffs.begin(), phi_poly.coeffs.end());
    QPoly r1(a.coeffs().begin(), a.coeffs().end());
    detail::qp_trim(r1);
    QPoly s0{}, s1{Rat(1)}; // coefficients of the representative in the Bezout identity
    while (!r1.empty()) {
        auto [q, r2] = detail::qp_divrem(r0, r1);
        QPoly s2 = detail::qp_sub_mul(std::move(s0), s1, q);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd = nonzero constant (Phi_N is irreducible over Q), s0 * a == r0 mod Phi_N
    if (r0.size() != 1)
        throw error("cyc_inv: internal error, nonconstant gcd with cyclotomic polynomial");
    std::vector<Rat> coeffs(totient(a.order()), Rat(0));
    for (std::size_t i = 0; i < s0.size(); ++i) coeffs[i] = s0[i] / r0[0];
    return Cyc(a.order(), std::move(coeffs));
}

inline Cyc operator/(const Cyc& a, const Cyc& b) { return a * cyc_inv(b); }

/// Re-express a at order M (a.order() must divide M) via zeta_N -> zeta_M^(M/N).
inline Cyc promote(const Cyc& a, unsigned long m) {
    if (m == 0 || m % a.order() != 0)
        throw usage_error("promote: target order " + std::to_string(m) +
                          " is not a multiple of " + std::to_string(a.order()));
    if (m == a.order()) return a;
    const unsigned long stride = m / a.order();
    Cyc r(m);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        r = r + zeta(m, static_cast<long>(i * stride)) * a.coeffs()[i];
    }
    return r;
}

} // namespace hyperarr
