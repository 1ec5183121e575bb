#pragma once

#include "kahler/error.hpp"
#include "kahler/rational.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kahler {

/// Truncation of a series whose every coefficient is known (a Laurent polynomial).
inline constexpr int exact = INT_MAX / 4;

/// Valuation reported for the zero series.
inline constexpr int infinite_valuation = INT_MAX;

namespace detail {

// Addition on truncation exponents that saturates at `exact`.
inline int trunc_add(int a, int b)
{
    if (a >= exact || b >= exact) {
        return exact;
    }
    long long r = static_cast<long long>(a) + b;
    return r >= exact ? exact : static_cast<int>(r);
}

} // namespace detail

/// Laurent series in t with exact rational coefficients, known modulo t^N.
/**
 * Coefficients are stored densely starting at the valuation; every exponent
 * at or above the truncation N is unknown. The zero series is representable at
 * any truncation and means "zero modulo t^N". Stored coefficients never reach
 * the truncation and the first and last stored coefficients are nonzero.
 */
class truncated_series
{
public:
    truncated_series() = default;

    truncated_series(int offset, std::vector<rational> coeffs, int truncation = exact)
        : offset_(offset), coeffs_(std::move(coeffs)), truncation_(truncation)
    {
        normalize();
    }

    static truncated_series zero(int truncation = exact)
    {
        truncated_series z;
        z.truncation_ = truncation;
        return z;
    }

    static truncated_series monomial(int exponent, const rational& c = 1, int truncation = exact)
    {
        return truncated_series(exponent, {c}, truncation);
    }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_exact() const { return truncation_ >= exact; }
    int truncation() const { return truncation_; }

    int valuation() const { return is_zero() ? infinite_valuation : offset_; }

    /// Exponent of the last nonzero stored coefficient (exact polynomials: the degree).
    int degree() const { return is_zero() ? -1 : offset_ + static_cast<int>(coeffs_.size()) - 1; }

    /// Exponent of coeffs()[0]; meaningful only for nonzero series.
    int offset() const { return offset_; }
    const std::vector<rational>& coeffs() const { return coeffs_; }

    /// Coefficient of t^k; k must lie below the truncation.
    rational coefficient(int k) const
    {
        if (k >= truncation_) {
            throw error(errc::insufficient_truncation,
                        "coefficient of t^" + std::to_string(k) + " requested from a series known modulo t^"
                            + std::to_string(truncation_));
        }
        return coeff_or_zero(k);
    }

    // Unchecked access; callers guarantee k < truncation().
    const rational& coeff_or_zero(int k) const
    {
        static const rational zero_value;
        if (is_zero() || k < offset_ || k > degree()) {
            return zero_value;
        }
        return coeffs_[static_cast<std::size_t>(k - offset_)];
    }

    const rational& leading_coefficient() const
    {
        if (is_zero()) {
            throw error(errc::domain_error, "leading coefficient of the zero series");
        }
        return coeffs_.front();
    }

    truncated_series truncated(int n) const
    {
        if (n >= truncation_) {
            return *this;
        }
        truncated_series r = *this;
        r.truncation_ = n;
        r.normalize();
        return r;
    }

    /// Multiplication by t^k.
    truncated_series shifted(int k) const
    {
        truncated_series r = *this;
        if (!r.is_zero()) {
            r.offset_ += k;
        }
        r.truncation_ = detail::trunc_add(truncation_, k);
        return r;
    }

    truncated_series monic() const
    {
        if (is_zero()) {
            return *this;
        }
        truncated_series r = *this;
        const rational inv = 1 / coeffs_.front();
        for (auto& c : r.coeffs_) {
            c *= inv;
        }
        return r;
    }

    /// Termwise d/dt; the truncation drops by one.
    truncated_series derivative() const
    {
        const int n = is_exact() ? exact : truncation_ - 1;
        if (is_zero()) {
            return zero(n);
        }
        std::vector<rational> d(coeffs_.size());
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            d[j] = coeffs_[j] * (offset_ + static_cast<int>(j));
        }
        return truncated_series(offset_ - 1, std::move(d), n);
    }

    truncated_series operator-() const
    {
        truncated_series r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend truncated_series operator+(const truncated_series& f, const truncated_series& g)
    {
        return combine(f, g, 1);
    }

    friend truncated_series operator-(const truncated_series& f, const truncated_series& g)
    {
        return combine(f, g, -1);
    }

    friend truncated_series operator*(const rational& a, const truncated_series& f)
    {
        if (a == 0) {
            return zero(f.truncation_);
        }
        truncated_series r = f;
        for (auto& c : r.coeffs_) {
            c *= a;
        }
        return r;
    }

    /// Product known up to min(N_f + v(g), N_g + v(f)); a zero operand counts with v = its truncation.
    friend truncated_series operator*(const truncated_series& f, const truncated_series& g)
    {
        const int vf = f.is_zero() ? f.truncation_ : f.offset_;
        const int vg = g.is_zero() ? g.truncation_ : g.offset_;
        const int n = std::min(detail::trunc_add(f.truncation_, vg), detail::trunc_add(g.truncation_, vf));
        if (f.is_zero() || g.is_zero()) {
            return zero(n);
        }
        const long long top = std::min<long long>(static_cast<long long>(f.degree()) + g.degree(), n - 1LL);
        if (top < static_cast<long long>(vf) + vg) {
            return zero(n);
        }
        std::vector<rational> out(static_cast<std::size_t>(top - (vf + vg) + 1));
        // Iterate over the nonzero terms of the sparser operand.
        const truncated_series& a = f.nonzero_count() <= g.nonzero_count() ? f : g;
        const truncated_series& b = &a == &f ? g : f;
        rational tmp;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            const rational& ai = a.coeffs_[i];
            if (ai == 0) {
                continue;
            }
            const long long ea = a.offset_ + static_cast<long long>(i);
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                const long long e = ea + b.offset_ + static_cast<long long>(j);
                if (e > top) {
                    break;
                }
                const rational& bj = b.coeffs_[j];
                if (bj == 0) {
                    continue;
                }
                mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
                rational& slot = out[static_cast<std::size_t>(e - (vf + vg))];
                mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
            }
        }
        return truncated_series(vf + vg, std::move(out), n);
    }

    /// Equal values and equal truncation.
    friend bool operator==(const truncated_series& f, const truncated_series& g)
    {
        return f.truncation_ == g.truncation_ && f.coeffs_ == g.coeffs_ && (f.is_zero() || f.offset_ == g.offset_);
    }

    std::size_t nonzero_count() const
    {
        return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](const rational& c) {
            return c != 0;
        }));
    }

    /// Canonical form such as "64*t^10 - 81*t^12", with " + O(t^N)" for truncated series.
    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const rational& c = coeffs_[j];
            if (c == 0) {
                continue;
            }
            const int e = offset_ + static_cast<int>(j);
            rational mag = abs(c);
            if (first) {
                if (c < 0) {
                    os << '-';
                }
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (e == 0) {
                os << mag.get_str();
                continue;
            }
            if (mag != 1) {
                os << mag.get_str() << '*';
            }
            os << 't';
            if (e != 1) {
                os << '^' << e;
            }
        }
        if (first) {
            os << '0';
        }
        if (!is_exact()) {
            os << " + O(t^" << truncation_ << ')';
        }
        return os.str();
    }

private:
    static truncated_series combine(const truncated_series& f, const truncated_series& g, int sign)
    {
        const int n = std::min(f.truncation_, g.truncation_);
        if (g.is_zero()) {
            return f.truncated(n);
        }
        if (f.is_zero()) {
            return (sign < 0 ? -g : g).truncated(n);
        }
        const int lo = std::min(f.offset_, g.offset_);
        const int hi = std::min(std::max(f.degree(), g.degree()), n - 1);
        if (hi < lo) {
            return zero(n);
        }
        std::vector<rational> out(static_cast<std::size_t>(hi - lo + 1));
        for (int e = f.offset_; e <= std::min(f.degree(), hi); ++e) {
            out[static_cast<std::size_t>(e - lo)] = f.coeffs_[static_cast<std::size_t>(e - f.offset_)];
        }
        for (int e = g.offset_; e <= std::min(g.degree(), hi); ++e) {
            const rational& c = g.coeffs_[static_cast<std::size_t>(e - g.offset_)];
            if (sign > 0) {
                out[static_cast<std::size_t>(e - lo)] += c;
            } else {
                out[static_cast<std::size_t>(e - lo)] -= c;
            }
        }
        return truncated_series(lo, std::move(out), n);
    }

    void normalize()
    {
        if (!coeffs_.empty() && offset_ < truncation_) {
            const long long keep = static_cast<long long>(truncation_) - offset_;
            if (static_cast<long long>(coeffs_.size()) > keep) {
                coeffs_.resize(static_cast<std::size_t>(keep));
            }
        } else {
            coeffs_.clear();
        }
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) {
            ++lead;
        }
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            offset_ = 0;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            offset_ += static_cast<int>(lead);
        }
    }

    int offset_ = 0;
    std::vector<rational> coeffs_;
    int truncation_ = exact;
};

/// Valuation of f, or infinite_valuation for the zero series.
inline int valuation(const truncated_series& f) { return f.valuation(); }

inline truncated_series series_mul(const truncated_series& f, const truncated_series& g) { return f * g; }

inline truncated_series series_derivative(const truncated_series& f) { return f.derivative(); }

} // namespace kahler
