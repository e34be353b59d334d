#pragma once

// Arithmetic in GF(p^k) over log/exp tables, Frobenius maps and the
// quadratic-extension bases used by the partition constructions.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polarpart::gf {

class FieldError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Largest supported field order.
inline constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

/// A field element, stored as its positional encoding sum(coeffs[i] * p^i).
/// The tag identifies the field it came from so mixed-field arithmetic can be
/// rejected.
struct Elem {
    std::uint32_t code = 0;
    std::uint32_t tag = 0;

    friend bool operator==(Elem a, Elem b) { return a.code == b.code && a.tag == b.tag; }
    friend bool operator<(Elem a, Elem b) { return a.code < b.code; }
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Splits a prime power q into (p, d) with q = p^d. Throws for other q.
inline std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q)
{
    if (q < 2)
        throw FieldError("not a prime power: " + std::to_string(q));
    std::uint64_t p = 2;
    while (q % p != 0)
        ++p;
    std::uint32_t d = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++d;
    }
    if (rest != 1)
        throw FieldError("not a prime power: " + std::to_string(q));
    return {static_cast<std::uint32_t>(p), d};
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    while (exp-- > 0)
        r *= base;
    return r;
}

namespace detail {

    using Poly = std::vector<std::uint32_t>; // little-endian coefficients

    inline void trim(Poly& a)
    {
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }

    // Remainder of a modulo a monic b, coefficients mod p.
    inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
    {
        trim(a);
        const std::size_t db = b.size() - 1;
        while (a.size() > db) {
            const std::uint64_t lead = a.back();
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i) {
                const std::uint64_t sub = lead * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
            trim(a);
        }
        return a;
    }

    inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p)
    {
        if (a.empty() || b.empty())
            return {};
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = static_cast<std::uint32_t>(
                    (r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        return poly_mod(std::move(r), mod, p);
    }

    inline Poly decode_poly(std::uint64_t n, std::uint32_t p, std::uint32_t len)
    {
        Poly c(len, 0);
        for (std::uint32_t i = 0; i < len; ++i) {
            c[i] = static_cast<std::uint32_t>(n % p);
            n /= p;
        }
        return c;
    }

    inline std::uint64_t encode_poly(const Poly& c, std::uint32_t p)
    {
        std::uint64_t n = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            n = n * p + c[i];
        return n;
    }

} // namespace detail

/// True iff the monic polynomial `f` (little-endian, leading 1) has no monic
/// factor of degree 1..deg/2. Exhaustive over candidate divisors.
inline bool is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p)
{
    const auto deg = static_cast<std::uint32_t>(f.size() - 1);
    if (deg <= 1)
        return deg == 1;
    for (std::uint32_t dd = 1; dd <= deg / 2; ++dd) {
        const std::uint64_t count = ipow(p, dd);
        for (std::uint64_t n = 0; n < count; ++n) {
            auto g = detail::decode_poly(n, p, dd);
            g.push_back(1);
            if (detail::poly_mod(f, g, p).empty())
                return false;
        }
    }
    return true;
}

/// Immutable context for GF(p^k). Copies share the same tables.
class Field {
  public:
    /// The field with the lexicographically smallest monic irreducible modulus
    /// of degree k; candidates are ordered by the encoding of their lower k
    /// coefficients.
    static Field make(std::uint32_t p, std::uint32_t k)
    {
        if (!is_prime(p))
            throw FieldError("characteristic is not prime: " + std::to_string(p));
        if (k == 0)
            throw FieldError("extension degree must be at least 1");
        std::uint64_t order = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            order *= p;
            if (order > kMaxOrder)
                throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                                 " exceeds ceiling " + std::to_string(kMaxOrder));
        }
        auto t = std::make_shared<Tables>();
        t->p = p;
        t->k = k;
        t->order = static_cast<std::uint32_t>(order);
        t->tag = p * 64u + k;
        if (k == 1) {
            t->modulus = {0, 1};
        }
        else {
            for (std::uint64_t n = 0; n < order; ++n) {
                auto f = detail::decode_poly(n, p, k);
                f.push_back(1);
                if (is_irreducible(f, p)) {
                    t->modulus = std::move(f);
                    break;
                }
            }
        }
        build_tables(*t);
        return Field(std::move(t));
    }

    /// The field of order q (q a prime power).
    static Field of_order(std::uint64_t q)
    {
        auto [p, d] = prime_power(q);
        return make(p, d);
    }

    std::uint32_t characteristic() const { return t_->p; }
    std::uint32_t degree() const { return t_->k; }
    std::uint32_t order() const { return t_->order; }
    std::uint32_t tag() const { return t_->tag; }
    /// Monic modulus, little-endian, length degree()+1.
    const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

    Elem zero() const { return {0, t_->tag}; }
    Elem one() const { return {1, t_->tag}; }

    Elem decode(std::uint64_t n) const
    {
        if (n >= t_->order)
            throw FieldError("encoding " + std::to_string(n) + " out of range for order " +
                             std::to_string(t_->order));
        return {static_cast<std::uint32_t>(n), t_->tag};
    }
    std::uint32_t encode(Elem u) const
    {
        check(u);
        return u.code;
    }
    /// Unchecked construction from an encoding known to be in range.
    Elem at(std::uint32_t code) const { return {code, t_->tag}; }

    std::vector<std::uint32_t> coeffs(Elem u) const
    {
        check(u);
        return detail::decode_poly(u.code, t_->p, t_->k);
    }
    Elem from_coeffs(const std::vector<std::uint32_t>& c) const
    {
        if (c.size() != t_->k)
            throw FieldError("coefficient vector has wrong length");
        for (auto x : c)
            if (x >= t_->p)
                throw FieldError("coefficient out of range");
        return at(static_cast<std::uint32_t>(detail::encode_poly(c, t_->p)));
    }

    bool contains(Elem u) const { return u.tag == t_->tag && u.code < t_->order; }

    Elem add(Elem a, Elem b) const
    {
        check(a, b);
        return at(raw_add(a.code, b.code));
    }
    Elem neg(Elem a) const
    {
        check(a);
        return at(t_->neg[a.code]);
    }
    Elem sub(Elem a, Elem b) const
    {
        check(a, b);
        return at(raw_add(a.code, t_->neg[b.code]));
    }
    Elem mul(Elem a, Elem b) const
    {
        check(a, b);
        return at(raw_mul(a.code, b.code));
    }
    Elem inv(Elem a) const
    {
        check(a);
        if (a.code == 0)
            throw FieldError("inverse of zero");
        const std::uint32_t n1 = t_->order - 1;
        return at(t_->exp[(n1 - t_->log[a.code]) % n1]);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t n) const
    {
        check(a);
        return at(raw_pow(a.code, n));
    }
    /// u^(p^j).
    Elem frobenius(Elem u, std::uint32_t j) const
    {
        check(u);
        return at(raw_frobenius(u.code, j));
    }

    // Unchecked operations on encodings, for hot loops.
    std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const
    {
        if (t_->p == 2)
            return a ^ b;
        if (!t_->add.empty())
            return t_->add[std::size_t{a} * t_->order + b];
        std::uint32_t r = 0;
        std::uint32_t place = 1;
        const std::uint32_t p = t_->p;
        for (std::uint32_t i = 0; i < t_->k; ++i) {
            const std::uint32_t s = (a % p + b % p) % p;
            r += s * place;
            a /= p;
            b /= p;
            place *= p;
        }
        return r;
    }
    std::uint32_t raw_neg(std::uint32_t a) const { return t_->neg[a]; }
    std::uint32_t raw_sub(std::uint32_t a, std::uint32_t b) const { return raw_add(a, t_->neg[b]); }
    std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const
    {
        if (a == 0 || b == 0)
            return 0;
        return t_->exp[t_->log[a] + t_->log[b]];
    }
    std::uint32_t raw_pow(std::uint32_t a, std::uint64_t n) const
    {
        if (n == 0)
            return 1;
        if (a == 0)
            return 0;
        const std::uint64_t n1 = t_->order - 1;
        return t_->exp[(std::uint64_t{t_->log[a]} * (n % n1)) % n1];
    }
    std::uint32_t raw_frobenius(std::uint32_t a, std::uint32_t j) const
    {
        if (a == 0)
            return 0;
        const std::uint64_t n1 = t_->order - 1;
        return t_->exp[(std::uint64_t{t_->log[a]} * t_->frob_mult[j % t_->k]) % n1];
    }

    /// Elements fixed by u -> u^(p^d), i.e. the subfield GF(p^d) when d | k.
    bool in_subfield(Elem u, std::uint32_t d) const { return frobenius(u, d) == u; }

    /// Primitive element used for the log tables.
    Elem generator() const { return at(t_->generator); }

    friend bool operator==(const Field& a, const Field& b) { return a.t_->tag == b.t_->tag; }

  private:
    struct Tables {
        std::uint32_t p = 0;
        std::uint32_t k = 0;
        std::uint32_t order = 0;
        std::uint32_t tag = 0;
        std::uint32_t generator = 0;
        std::vector<std::uint32_t> modulus;
        std::vector<std::uint32_t> exp; // length 2(order-1)
        std::vector<std::uint32_t> log; // log[0] unused
        std::vector<std::uint32_t> neg;
        std::vector<std::uint32_t> add; // full table for small odd-characteristic fields
        std::vector<std::uint64_t> frob_mult; // p^j mod (order-1)
    };

    explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

    static void build_tables(Tables& t)
    {
        const std::uint32_t n = t.order;
        const std::uint32_t n1 = n - 1;
        t.log.assign(n, 0);
        t.exp.assign(std::size_t{2} * n1, 0);

        // Smallest encoding whose powers run through every nonzero element.
        std::vector<char> seen(n, 0);
        for (std::uint32_t g = 1; g < n; ++g) {
            std::fill(seen.begin(), seen.end(), 0);
            const auto gp = detail::decode_poly(g, t.p, t.k);
            detail::Poly cur{1};
            std::uint32_t i = 0;
            bool ok = true;
            for (; i < n1; ++i) {
                const auto c = static_cast<std::uint32_t>(detail::encode_poly(cur, t.p));
                if (seen[c]) {
                    ok = false;
                    break;
                }
                seen[c] = 1;
                t.exp[i] = c;
                t.log[c] = i;
                cur = detail::poly_mulmod(cur, gp, t.modulus, t.p);
            }
            if (ok) {
                t.generator = g;
                break;
            }
        }
        for (std::uint32_t i = n1; i < 2 * n1; ++i)
            t.exp[i] = t.exp[i - n1];

        t.neg.assign(n, 0);
        for (std::uint32_t a = 0; a < n; ++a) {
            auto c = detail::decode_poly(a, t.p, t.k);
            for (auto& x : c)
                x = (t.p - x) % t.p;
            t.neg[a] = static_cast<std::uint32_t>(detail::encode_poly(c, t.p));
        }
        if (t.p != 2 && n <= 1024) {
            t.add.assign(std::size_t{n} * n, 0);
            for (std::uint32_t a = 0; a < n; ++a) {
                const auto ca = detail::decode_poly(a, t.p, t.k);
                for (std::uint32_t b = 0; b < n; ++b) {
                    auto cb = detail::decode_poly(b, t.p, t.k);
                    for (std::uint32_t i = 0; i < t.k; ++i)
                        cb[i] = (ca[i] + cb[i]) % t.p;
                    t.add[std::size_t{a} * n + b] =
                        static_cast<std::uint32_t>(detail::encode_poly(cb, t.p));
                }
            }
        }
        t.frob_mult.assign(t.k, 1);
        for (std::uint32_t j = 1; j < t.k; ++j)
            t.frob_mult[j] = t.frob_mult[j - 1] * t.p % (n1 == 0 ? 1 : n1);
        if (n1 == 1)
            std::fill(t.frob_mult.begin(), t.frob_mult.end(), 1);
    }

    void check(Elem a) const
    {
        if (a.tag != t_->tag || a.code >= t_->order)
            throw FieldError("operand does not belong to GF(" + std::to_string(t_->p) + "^" +
                             std::to_string(t_->k) + ")");
    }
    void check(Elem a, Elem b) const
    {
        check(a);
        check(b);
    }

    std::shared_ptr<const Tables> t_;
};

/// The subfield GF(p^d) of a field, with a dense index over its elements in
/// increasing encoding order.
class Subfield {
  public:
    Subfield(const Field& f, std::uint32_t d) : field_(f), d_(d)
    {
        if (d == 0 || f.degree() % d != 0)
            throw FieldError("subfield degree must divide the extension degree");
        index_.assign(f.order(), -1);
        for (std::uint32_t c = 0; c < f.order(); ++c) {
            if (f.raw_frobenius(c, d) == c) {
                index_[c] = static_cast<std::int32_t>(elems_.size());
                elems_.push_back(f.at(c));
            }
        }
    }

    std::uint32_t degree() const { return d_; }
    std::uint32_t order() const { return static_cast<std::uint32_t>(elems_.size()); }
    const std::vector<Elem>& elements() const { return elems_; }
    Elem element(std::uint32_t i) const { return elems_.at(i); }
    bool contains(Elem u) const { return u.code < index_.size() && index_[u.code] >= 0; }
    std::uint32_t index_of(Elem u) const
    {
        if (!contains(u))
            throw FieldError("element is not in the subfield");
        return static_cast<std::uint32_t>(index_[u.code]);
    }

  private:
    Field field_;
    std::uint32_t d_;
    std::vector<Elem> elems_;
    std::vector<std::int32_t> index_;
};

/// Bases of GF(q^2) over GF(q): a normal pair {beta, beta^q} and {1, mu}.
class QuadBasis {
  public:
    /// Smallest beta (by encoding) with beta, beta^q independent over GF(q),
    /// and smallest mu outside GF(q).
    static QuadBasis find(const Field& f)
    {
        if (f.degree() % 2 != 0)
            throw FieldError("quadratic basis needs an even extension degree");
        const std::uint32_t d = f.degree() / 2;
        for (std::uint32_t c = 1; c < f.order(); ++c) {
            const Elem b = f.at(c);
            if (independent(f, d, b)) {
                for (std::uint32_t m = 0; m < f.order(); ++m) {
                    const Elem mu = f.at(m);
                    if (!f.in_subfield(mu, d))
                        return QuadBasis(f, b, mu);
                }
            }
        }
        throw FieldError("no normal element found");
    }

    /// Explicit choice; throws if either element violates its basis condition.
    QuadBasis(const Field& f, Elem beta, Elem mu) : field_(f), sub_(f, f.degree() / 2)
    {
        if (f.degree() % 2 != 0)
            throw FieldError("quadratic basis needs an even extension degree");
        d_ = f.degree() / 2;
        if (!independent(f, d_, beta))
            throw FieldError("beta and beta^q are dependent over the subfield");
        if (f.in_subfield(mu, d_))
            throw FieldError("mu lies in the subfield");
        beta_ = beta;
        beta_q_ = f.frobenius(beta, d_);
        mu_ = mu;
        mu_q_ = f.frobenius(mu, d_);
        // u = s beta + t beta^q and u^q = t beta + s beta^q give a 2x2 system
        // with determinant beta^2 - beta^(2q).
        const Elem det = f.sub(f.mul(beta_, beta_), f.mul(beta_q_, beta_q_));
        inv_det_ = f.inv(det);
        inv_mu_gap_ = f.inv(f.sub(mu_, mu_q_));
    }

    /// Linear independence of {b, b^q} over GF(q), checked against every
    /// subfield multiple of b.
    static bool independent(const Field& f, std::uint32_t d, Elem b)
    {
        if (b.code == 0)
            return false;
        const Elem bq = f.frobenius(b, d);
        const Subfield sub(f, d);
        for (Elem c : sub.elements())
            if (f.mul(c, b) == bq)
                return false;
        return true;
    }

    const Field& field() const { return field_; }
    const Subfield& subfield() const { return sub_; }
    std::uint32_t sub_degree() const { return d_; }
    Elem beta() const { return beta_; }
    Elem beta_q() const { return beta_q_; }
    Elem mu() const { return mu_; }

    /// (s, t) with u = s*beta + t*beta^q, s and t in GF(q).
    std::pair<Elem, Elem> split_beta(Elem u) const
    {
        const Field& f = field_;
        const Elem uq = f.frobenius(u, d_);
        const Elem s = f.mul(f.sub(f.mul(u, beta_), f.mul(uq, beta_q_)), inv_det_);
        const Elem t = f.mul(f.sub(f.mul(uq, beta_), f.mul(u, beta_q_)), inv_det_);
        return {s, t};
    }
    Elem join_beta(Elem s, Elem t) const
    {
        require_sub(s, t);
        return field_.add(field_.mul(s, beta_), field_.mul(t, beta_q_));
    }

    /// (s, t) with u = s + t*mu, s and t in GF(q).
    std::pair<Elem, Elem> split_mu(Elem u) const
    {
        const Field& f = field_;
        const Elem t = f.mul(f.sub(u, f.frobenius(u, d_)), inv_mu_gap_);
        const Elem s = f.sub(u, f.mul(t, mu_));
        return {s, t};
    }
    Elem join_mu(Elem s, Elem t) const
    {
        require_sub(s, t);
        return field_.add(s, field_.mul(t, mu_));
    }

  private:
    void require_sub(Elem s, Elem t) const
    {
        if (!sub_.contains(s) || !sub_.contains(t))
            throw FieldError("basis coefficients must lie in the subfield");
    }

    Field field_;
    Subfield sub_;
    std::uint32_t d_ = 0;
    Elem beta_, beta_q_, mu_, mu_q_, inv_det_, inv_mu_gap_;
};

} // namespace polarpart::gf
