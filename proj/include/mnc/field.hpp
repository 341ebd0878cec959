#pragma once

// Arithmetic in GF(p^l) for prime p and field order q = p^l <= 2^16.
// Elements are polynomials over GF(p) modulo a fixed monic irreducible
// modulus of degree l; an element is stored as the base-p encoding of its
// coefficient vector (low-degree digit first), so values range over [0, q).

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnc {

struct FieldElem {
    uint32_t value = 0;
    friend constexpr bool operator==(const FieldElem&, const FieldElem&) = default;
    friend constexpr auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

namespace detail {

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomial over GF(p), coefficients low-degree first.
inline int poly_degree(const std::vector<uint32_t>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

// Remainder of a modulo a monic divisor m.
inline std::vector<uint32_t> poly_mod(std::vector<uint32_t> a,
                                      const std::vector<uint32_t>& m, uint32_t p) {
    const int dm = poly_degree(m);
    for (int da = poly_degree(a); da >= dm && dm >= 0; da = poly_degree(a)) {
        const uint64_t c = a[da];
        for (int j = 0; j <= dm; ++j) {
            const int idx = da - dm + j;
            a[idx] = static_cast<uint32_t>((a[idx] + (p - m[j]) * c) % p);
        }
    }
    return a;
}

inline std::vector<uint32_t> digits_of(uint64_t v, uint32_t p, uint32_t count) {
    std::vector<uint32_t> d(count);
    for (uint32_t i = 0; i < count; ++i) {
        d[i] = static_cast<uint32_t>(v % p);
        v /= p;
    }
    return d;
}

// Trial division by every monic polynomial of degree 1..deg(m)/2.
inline bool is_irreducible(const std::vector<uint32_t>& m, uint32_t p) {
    const int l = poly_degree(m);
    for (int dd = 1; dd <= l / 2; ++dd) {
        uint64_t count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (uint64_t e = 0; e < count; ++e) {
            std::vector<uint32_t> div = digits_of(e, p, dd);
            div.push_back(1);
            if (poly_degree(poly_mod(m, div, p)) < 0) return false;
        }
    }
    return true;
}

}  // namespace detail

class FieldCtx {
public:
    // GF(2), the smallest field; also the default context.
    FieldCtx() : p_(2), l_(1), q_(2), modulus_{0, 1}, bits_(2) {}

    FieldCtx(uint32_t p, uint32_t l) {
        if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
        if (l < 1) throw std::invalid_argument("field extension degree must be >= 1");
        uint64_t q = 1;
        for (uint32_t i = 0; i < l; ++i) {
            q *= p;
            if (q > 65536) throw std::invalid_argument("field order above 2^16 is unsupported");
        }
        p_ = p;
        l_ = l;
        q_ = static_cast<uint32_t>(q);
        // Lexicographically smallest monic irreducible modulus: scan the
        // base-p encodings of the lower coefficients in ascending order.
        for (uint64_t k = 0; k < q; ++k) {
            std::vector<uint32_t> m = detail::digits_of(k, p, l);
            m.push_back(1);
            if (detail::is_irreducible(m, p)) {
                modulus_ = std::move(m);
                break;
            }
        }
        if (modulus_.empty()) throw std::logic_error("no irreducible modulus found");
        bits_ = 0;
        if (p_ == 2)
            for (uint32_t i = 0; i <= l_; ++i) bits_ |= modulus_[i] << i;
    }

    uint32_t characteristic() const { return p_; }
    uint32_t degree() const { return l_; }
    uint32_t order() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    std::string name() const { return std::to_string(p_) + "^" + std::to_string(l_); }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }

    FieldElem element(uint64_t index) const {
        if (index >= q_) throw std::out_of_range("element index " + std::to_string(index) + " out of range for " + name());
        return {static_cast<uint32_t>(index)};
    }

    std::vector<uint32_t> coeffs(FieldElem a) const { return detail::digits_of(a.value, p_, l_); }

    FieldElem from_coeffs(const std::vector<uint32_t>& c) const {
        if (c.size() != l_) throw std::invalid_argument("expected " + std::to_string(l_) + " coefficients");
        uint32_t v = 0;
        for (uint32_t i = l_; i-- > 0;) {
            if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
            v = v * p_ + c[i];
        }
        return {v};
    }

    FieldElem add(FieldElem a, FieldElem b) const {
        check(a);
        check(b);
        if (p_ == 2) return {a.value ^ b.value};
        uint32_t r = 0, scale = 1;
        uint32_t x = a.value, y = b.value;
        for (uint32_t i = 0; i < l_; ++i) {
            r += (x % p_ + y % p_) % p_ * scale;
            x /= p_;
            y /= p_;
            scale *= p_;
        }
        return {r};
    }

    FieldElem neg(FieldElem a) const {
        check(a);
        if (p_ == 2) return a;
        uint32_t r = 0, scale = 1, x = a.value;
        for (uint32_t i = 0; i < l_; ++i) {
            r += (p_ - x % p_) % p_ * scale;
            x /= p_;
            scale *= p_;
        }
        return {r};
    }

    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

    FieldElem mul(FieldElem a, FieldElem b) const {
        check(a);
        check(b);
        if (p_ == 2) {
            // Values are bit-polynomials: carryless multiply, then reduce.
            uint64_t acc = 0, x = a.value;
            uint32_t y = b.value;
            while (y) {
                if (y & 1) acc ^= x;
                x <<= 1;
                y >>= 1;
            }
            for (int d = std::bit_width(acc) - 1; d >= static_cast<int>(l_); d = std::bit_width(acc) - 1)
                acc ^= static_cast<uint64_t>(bits_) << (d - l_);
            return {static_cast<uint32_t>(acc)};
        }
        if (l_ == 1) return {static_cast<uint32_t>(static_cast<uint64_t>(a.value) * b.value % p_)};
        const std::vector<uint32_t> da = coeffs(a), db = coeffs(b);
        std::vector<uint64_t> prod(2 * l_ - 1, 0);
        for (uint32_t i = 0; i < l_; ++i)
            for (uint32_t j = 0; j < l_; ++j) prod[i + j] += static_cast<uint64_t>(da[i]) * db[j];
        for (auto& c : prod) c %= p_;
        for (int i = static_cast<int>(prod.size()) - 1; i >= static_cast<int>(l_); --i) {
            const uint64_t c = prod[i];
            if (c == 0) continue;
            for (uint32_t j = 0; j < l_; ++j)
                prod[i - l_ + j] = (prod[i - l_ + j] + (p_ - modulus_[j]) * c) % p_;
            prod[i] = 0;
        }
        uint32_t v = 0;
        for (uint32_t i = l_; i-- > 0;) v = v * p_ + static_cast<uint32_t>(prod[i]);
        return {v};
    }

    FieldElem pow(FieldElem a, uint64_t e) const {
        FieldElem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    FieldElem inv(FieldElem a) const {
        if (a.value == 0) throw std::domain_error("division by zero in " + name());
        return pow(a, q_ - 2);
    }

    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.p_ == b.p_ && a.l_ == b.l_ && a.modulus_ == b.modulus_;
    }

private:
    void check(FieldElem a) const {
        if (a.value >= q_) throw std::out_of_range("element value " + std::to_string(a.value) + " outside " + name());
    }

    uint32_t p_, l_, q_;
    std::vector<uint32_t> modulus_;  // length l+1, monic
    uint32_t bits_;                  // modulus as a bitmask when p == 2
};

inline FieldCtx make_field(uint32_t p, uint32_t l) { return FieldCtx(p, l); }

inline FieldCtx field_from_name(const std::string& name) {
    const auto caret = name.find('^');
    try {
        if (caret == std::string::npos) return FieldCtx(static_cast<uint32_t>(std::stoul(name)), 1);
        return FieldCtx(static_cast<uint32_t>(std::stoul(name.substr(0, caret))),
                        static_cast<uint32_t>(std::stoul(name.substr(caret + 1))));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad field name '" + name + "', expected \"p^l\"");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("bad field name '" + name + "', expected \"p^l\"");
    }
}

// Injective field homomorphism GF(p^a) -> GF(p^b) for a | b, realized by
// mapping the small field's generator to a root of its modulus in the large
// field (the smallest root, found exhaustively, so the map is deterministic).
class FieldEmbedding {
public:
    FieldEmbedding(FieldCtx from, FieldCtx to) : from_(std::move(from)), to_(std::move(to)) {
        if (from_.characteristic() != to_.characteristic() || to_.degree() % from_.degree() != 0)
            throw std::invalid_argument("no subfield embedding of " + from_.name() + " into " + to_.name());
        FieldElem root = to_.zero();
        bool found = false;
        for (uint32_t t = 0; t < to_.order() && !found; ++t) {
            FieldElem acc = to_.zero();
            const auto& m = from_.modulus();
            for (size_t i = m.size(); i-- > 0;)
                acc = to_.add(to_.mul(acc, to_.element(t)), to_.element(m[i]));
            if (acc == to_.zero()) {
                root = to_.element(t);
                found = true;
            }
        }
        if (!found) throw std::logic_error("modulus has no root in extension field");
        table_.reserve(from_.order());
        for (uint32_t v = 0; v < from_.order(); ++v) {
            const auto digits = from_.coeffs(from_.element(v));
            FieldElem acc = to_.zero();
            for (size_t i = digits.size(); i-- > 0;)
                acc = to_.add(to_.mul(acc, root), to_.element(digits[i]));
            table_.push_back(acc);
        }
    }

    const FieldCtx& from() const { return from_; }
    const FieldCtx& to() const { return to_; }
    FieldElem operator()(FieldElem a) const {
        if (a.value >= table_.size()) throw std::out_of_range("element outside source field");
        return table_[a.value];
    }

private:
    FieldCtx from_, to_;
    std::vector<FieldElem> table_;
};

inline FieldEmbedding embed_field(const FieldCtx& small, const FieldCtx& large) {
    return FieldEmbedding(small, large);
}

}  // namespace mnc
