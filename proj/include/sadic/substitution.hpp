/*
 * substitution.hpp
 *
 * Substitutions (non-erasing morphisms of free monoids), their incidence
 * matrices, positivity and primitivity checks, fixed points, Perron data and
 * the prefix-suffix automaton.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sadic/core.hpp"
#include "sadic/matrix.hpp"

namespace sadic {

class Substitution {
public:
    Substitution() = default;

    Substitution(Alphabet domain, Alphabet codomain, std::vector<FiniteWord> images,
                 std::string name = "")
        : domain_(std::move(domain)), codomain_(std::move(codomain)),
          images_(std::move(images)), name_(std::move(name)) {
        if (images_.size() != domain_.size())
            throw precondition_error("substitution: need one image per domain letter");
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (images_[i].empty())
                throw precondition_error("substitution: erasing image for letter '" +
                                         domain_.letter(static_cast<letter_t>(i)) + "'");
            if (images_[i].alphabet() != codomain_)
                throw alphabet_mismatch("substitution: image of '" +
                                        domain_.letter(static_cast<letter_t>(i)) +
                                        "' is not over the codomain alphabet");
        }
    }

    /* Endomorphism from rule strings, e.g. from_rules(latin(2), {"ab","a"}). */
    static Substitution from_rules(const Alphabet& alphabet, std::vector<std::string> rules,
                                   std::string name = "") {
        std::vector<FiniteWord> images;
        images.reserve(rules.size());
        for (const auto& r : rules) images.push_back(FiniteWord::parse(alphabet, r));
        return Substitution(alphabet, alphabet, std::move(images), std::move(name));
    }

    static Substitution identity(const Alphabet& alphabet) {
        std::vector<FiniteWord> images;
        for (letter_t i = 0; i < alphabet.size(); ++i)
            images.push_back(FiniteWord(alphabet, {i}));
        return Substitution(alphabet, alphabet, std::move(images), "id");
    }

    const Alphabet& domain() const { return domain_; }
    const Alphabet& codomain() const { return codomain_; }
    const FiniteWord& image(letter_t l) const { return images_.at(l); }
    const std::vector<FiniteWord>& images() const { return images_; }
    const std::string& name() const { return name_; }
    bool square() const { return domain_ == codomain_; }

    Substitution named(std::string n) const {
        Substitution s = *this;
        s.name_ = std::move(n);
        return s;
    }

    friend bool operator==(const Substitution& a, const Substitution& b) {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
    }

private:
    Alphabet domain_;
    Alphabet codomain_;
    std::vector<FiniteWord> images_;
    std::string name_;
};

/* Homomorphic extension to words: concatenation of letter images. */
inline FiniteWord apply(const Substitution& s, const FiniteWord& w) {
    if (w.alphabet() != s.domain())
        throw alphabet_mismatch("apply: word is not over the substitution's domain");
    std::size_t total = 0;
    for (letter_t l : w.letters()) total += s.image(l).size();
    std::vector<letter_t> out;
    out.reserve(total);
    for (letter_t l : w.letters()) {
        const auto& img = s.image(l).letters();
        out.insert(out.end(), img.begin(), img.end());
    }
    return FiniteWord(s.codomain(), std::move(out));
}

/* compose(s, t)(a) = s(t(a)); requires codomain(t) == domain(s). */
inline Substitution compose(const Substitution& s, const Substitution& t) {
    if (t.codomain() != s.domain())
        throw alphabet_mismatch("compose: codomain of the inner substitution must equal the "
                                "domain of the outer one");
    std::vector<FiniteWord> images;
    images.reserve(t.domain().size());
    for (letter_t a = 0; a < t.domain().size(); ++a) images.push_back(apply(s, t.image(a)));
    std::string name;
    if (!s.name().empty() && !t.name().empty()) name = s.name() + "*" + t.name();
    return Substitution(t.domain(), s.codomain(), std::move(images), std::move(name));
}

/* entry (i, j) counts occurrences of codomain letter i in the image of j */
inline IntMatrix incidence(const Substitution& s) {
    IntMatrix m(s.codomain().size(), s.domain().size(), 0);
    for (letter_t j = 0; j < s.domain().size(); ++j)
        for (letter_t i : s.image(j).letters()) m(i, j) += 1;
    return m;
}

inline bool is_positive(const Substitution& s) { return incidence(s).positive(); }

struct PrimitivityResult {
    enum class Verdict { primitive, not_primitive, unknown };
    Verdict verdict = Verdict::unknown;
    std::optional<std::size_t> witness;  // least k with M^k > 0
    std::size_t checked_up_to = 0;

    bool primitive() const { return verdict == Verdict::primitive; }
};

/* Wielandt: a primitive d x d matrix has M^((d-1)^2 + 1) > 0. */
inline std::size_t wielandt_bound(std::size_t d) { return (d - 1) * (d - 1) + 1; }

inline PrimitivityResult is_primitive(const IntMatrix& m, std::size_t k_max = 0) {
    if (m.rows() != m.cols())
        throw precondition_error("is_primitive: matrix must be square");
    std::size_t d = m.rows();
    std::size_t bound = wielandt_bound(d);
    if (k_max == 0) k_max = bound;

    // boolean powers suffice for positivity of powers
    Matrix<std::uint8_t> base(d, d, 0), power(d, d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            base(i, j) = m(i, j) > 0 ? 1 : 0;
            power(i, j) = base(i, j);
        }
    auto all_positive = [&](const Matrix<std::uint8_t>& b) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (!b(i, j)) return false;
        return true;
    };
    auto bool_mult = [&](const Matrix<std::uint8_t>& a, const Matrix<std::uint8_t>& b) {
        Matrix<std::uint8_t> c(d, d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                if (a(i, k))
                    for (std::size_t j = 0; j < d; ++j)
                        if (b(k, j)) c(i, j) = 1;
        return c;
    };

    PrimitivityResult r;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (k > 1) power = bool_mult(power, base);
        if (all_positive(power)) {
            r.verdict = PrimitivityResult::Verdict::primitive;
            r.witness = k;
            r.checked_up_to = k;
            return r;
        }
    }
    r.checked_up_to = k_max;
    r.verdict = k_max >= bound ? PrimitivityResult::Verdict::not_primitive
                               : PrimitivityResult::Verdict::unknown;
    return r;
}

inline PrimitivityResult is_primitive(const Substitution& s, std::size_t k_max = 0) {
    if (!s.square())
        throw precondition_error("is_primitive: substitution must be an endomorphism");
    return is_primitive(incidence(s), k_max);
}

/*
 * Fixed point of s starting with letter a.  Requires s(a) = a..., |s(a)| >= 2;
 * the length of s^n(a) then grows strictly (a stays a prefix and its image
 * already has length >= 2), so the limit word exists.  The stream is produced
 * by the standard self-reading expansion: u = s(u_0) s(u_1) s(u_2) ...
 */
inline WordStream fixed_point_stream(const Substitution& s, letter_t a) {
    if (!s.square())
        throw precondition_error("fixed_point_stream: substitution must be an endomorphism");
    if (a >= s.domain().size())
        throw precondition_error("fixed_point_stream: seed letter out of range");
    const FiniteWord& img = s.image(a);
    if (img[0] != a)
        throw precondition_error("fixed_point_stream: image of '" + s.domain().letter(a) +
                                 "' does not begin with it");
    if (img.size() < 2)
        throw precondition_error("fixed_point_stream: image of '" + s.domain().letter(a) +
                                 "' must have length >= 2");
    // bootstrap buffer with s(a), then self-read from position 1
    struct Gen {
        Substitution sub;
        letter_t seed;
        std::size_t read = 0;
        bool started = false;
        bool operator()(std::vector<letter_t>& buf, std::size_t target) {
            if (!started) {
                const auto& first = sub.image(seed).letters();
                buf.insert(buf.end(), first.begin(), first.end());
                read = 1;
                started = true;
            }
            while (buf.size() < target) {
                const auto& w = sub.image(buf[read]).letters();
                buf.insert(buf.end(), w.begin(), w.end());
                ++read;
            }
            return true;
        }
    };
    std::string desc = s.name().empty() ? "fixed point" : "fixed point of " + s.name();
    return WordStream(s.domain(), Gen{s, a}, desc + " from " + s.domain().letter(a));
}

struct PerronData {
    double lambda = 0.0;
    std::vector<double> right_eigenvector;  // positive, sums to 1
    double residual = 0.0;
    std::size_t iterations = 0;
};

/*
 * Dominant eigenvalue and eigenvector of a primitive non-negative matrix by
 * power iteration on exact integer vectors; convergence is measured in the
 * Hilbert projective metric, which the positive cone contracts.
 */
inline PerronData perron(const IntMatrix& m, double tol = 1e-12,
                         std::size_t max_iterations = 100000) {
    if (m.rows() != m.cols()) throw precondition_error("perron: matrix must be square");
    auto prim = is_primitive(m);
    if (!prim.primitive())
        throw precondition_error("perron: matrix is not primitive, Perron positivity is not "
                                 "guaranteed");
    std::size_t d = m.rows();
    std::vector<mpz_class> v(d, 1);
    PerronData out;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        std::vector<mpz_class> w = m * v;
        double dist = hilbert_distance(v, w);
        v = std::move(w);
        out.iterations = it;
        if (dist < tol && it >= prim.witness.value_or(1)) break;
    }
    // normalize to sum 1 via exact rationals, then project to double
    mpz_class total = 0;
    for (const auto& x : v) total += x;
    std::vector<double> f(d);
    for (std::size_t i = 0; i < d; ++i) {
        mpq_class q(v[i], total);
        q.canonicalize();
        f[i] = q.get_d();
    }
    // Rayleigh-style lambda from one more exact step
    std::vector<mpz_class> w = m * v;
    mpz_class wsum = 0;
    for (const auto& x : w) wsum += x;
    mpq_class lam(wsum, total);
    lam.canonicalize();
    out.lambda = lam.get_d();
    out.right_eigenvector = f;
    double resid = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double mv = 0.0;
        for (std::size_t j = 0; j < d; ++j) mv += m(i, j).get_d() * f[j];
        resid = std::max(resid, std::abs(mv - out.lambda * f[i]));
    }
    out.residual = resid;
    return out;
}

/* One edge b -> a for every factorization s(b) = p a q. */
struct PrefixSuffixEdge {
    letter_t from;       // b
    letter_t to;         // a
    FiniteWord prefix;   // p
    FiniteWord suffix;   // q
};

struct PrefixSuffixAutomaton {
    Alphabet alphabet;
    std::vector<PrefixSuffixEdge> edges;
};

inline PrefixSuffixAutomaton prefix_suffix_automaton(const Substitution& s) {
    if (!s.square())
        throw precondition_error("prefix_suffix_automaton: substitution must be an endomorphism");
    PrefixSuffixAutomaton aut{s.domain(), {}};
    for (letter_t b = 0; b < s.domain().size(); ++b) {
        const FiniteWord& img = s.image(b);
        for (std::size_t pos = 0; pos < img.size(); ++pos) {
            aut.edges.push_back(PrefixSuffixEdge{
                b, img[pos], img.subword(0, pos), img.subword(pos + 1, img.size() - pos - 1)});
        }
    }
    return aut;
}

struct GrowthBounds {
    std::size_t depth = 0;
    mpz_class beta_minus;  // min_i |s_[0,n)(i)|
    mpz_class beta_plus;   // max_i |s_[0,n)(i)|
};

/* Exact min/max image lengths of the composition, from product column sums. */
inline GrowthBounds growth_bounds(const std::vector<Substitution>& chain, std::size_t depth) {
    if (depth > chain.size())
        throw precondition_error("growth_bounds: depth exceeds chain length");
    GrowthBounds g;
    g.depth = depth;
    if (depth == 0) {
        g.beta_minus = 1;
        g.beta_plus = 1;
        return g;
    }
    IntMatrix prod = incidence(chain[0]);
    for (std::size_t k = 1; k < depth; ++k) {
        if (chain[k].codomain() != chain[k - 1].domain())
            throw alphabet_mismatch("growth_bounds: chain is not composable at index " +
                                    std::to_string(k));
        prod = prod * incidence(chain[k]);
    }
    g.beta_minus = prod.col_sum(0);
    g.beta_plus = g.beta_minus;
    for (std::size_t j = 1; j < prod.cols(); ++j) {
        mpz_class s = prod.col_sum(j);
        if (s < g.beta_minus) g.beta_minus = s;
        if (s > g.beta_plus) g.beta_plus = s;
    }
    return g;
}

}  // namespace sadic
