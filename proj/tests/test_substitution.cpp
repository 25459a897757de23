#include <catch2/catch.hpp>

#include <cmath>

#include "sadic/builtins.hpp"
#include "sadic/substitution.hpp"

using namespace sadic;

namespace {

FiniteWord word(const Alphabet& a, const std::string& s) { return FiniteWord::parse(a, s); }

/* apply s to w n times */
FiniteWord iterate(const Substitution& s, FiniteWord w, int n) {
    for (int i = 0; i < n; ++i) w = apply(s, w);
    return w;
}

std::vector<mpz_class> to_mpz(const std::vector<long long>& v) {
    std::vector<mpz_class> out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(static_cast<long>(x));
    return out;
}

}  // namespace

TEST_CASE("apply concatenates images") {
    Substitution fib = builtins::fibonacci();
    const Alphabet& a = fib.domain();
    REQUIRE(apply(fib, word(a, "a")).str() == "ab");
    REQUIRE(apply(fib, word(a, "ab")).str() == "aba");
    REQUIRE(iterate(fib, word(a, "a"), 3).str() == "abaab");

    Substitution id = Substitution::identity(a);
    REQUIRE(apply(id, word(a, "abba")) == word(a, "abba"));

    REQUIRE_THROWS_AS(apply(fib, word(Alphabet::latin(3), "abc")), alphabet_mismatch);
    REQUIRE_THROWS_AS(Substitution::from_rules(a, {"", "a"}), precondition_error);
}

TEST_CASE("apply is a homomorphism and abelianization is linear") {
    Substitution fib = builtins::fibonacci();
    const Alphabet& a = fib.domain();
    IntMatrix m = incidence(fib);
    // random-ish words: every split point, homomorphism + incidence action
    FiniteWord w = iterate(fib, word(a, "a"), 6);
    for (std::size_t cut : {std::size_t(0), std::size_t(3), w.size() / 2, w.size()}) {
        FiniteWord left = w.subword(0, cut), right = w.subword(cut, w.size() - cut);
        FiniteWord joined = apply(fib, left);
        joined.append(apply(fib, right));
        REQUIRE(joined == apply(fib, w));
    }
    auto lhs = to_mpz(abelianize(apply(fib, w)));
    auto rhs = m * to_mpz(abelianize(w));
    REQUIRE(lhs == rhs);
}

TEST_CASE("incidence matrices") {
    IntMatrix m = incidence(builtins::fibonacci());
    REQUIRE(m(0, 0) == 1);
    REQUIRE(m(0, 1) == 1);
    REQUIRE(m(1, 0) == 1);
    REQUIRE(m(1, 1) == 0);

    // permutation substitution -> permutation matrix
    IntMatrix p = incidence(builtins::swap());
    REQUIRE(p(0, 0) == 0);
    REQUIRE(p(0, 1) == 1);
    REQUIRE(p(1, 0) == 1);
    REQUIRE(p(1, 1) == 0);

    // 1 -> 2, 2 -> 3, 3 -> 1 2^B 3^C gives rows (0,0,1),(1,0,B),(0,1,C)
    IntMatrix jp = incidence(builtins::jacobi_perron(1, 2));
    REQUIRE(jp(0, 0) == 0);
    REQUIRE(jp(0, 1) == 0);
    REQUIRE(jp(0, 2) == 1);
    REQUIRE(jp(1, 0) == 1);
    REQUIRE(jp(1, 1) == 0);
    REQUIRE(jp(1, 2) == 1);
    REQUIRE(jp(2, 0) == 0);
    REQUIRE(jp(2, 1) == 1);
    REQUIRE(jp(2, 2) == 2);
    REQUIRE(builtins::jacobi_perron(1, 2).image(2).str() == "1233");
}

TEST_CASE("compose multiplies incidence matrices") {
    Substitution fib = builtins::fibonacci();
    Substitution id = Substitution::identity(fib.domain());
    REQUIRE(compose(fib, id) == fib);
    REQUIRE(compose(id, fib) == fib);

    Substitution fib2 = compose(fib, fib);
    IntMatrix m2 = incidence(fib2);
    REQUIRE(m2(0, 0) == 2);
    REQUIRE(m2(0, 1) == 1);
    REQUIRE(m2(1, 0) == 1);
    REQUIRE(m2(1, 1) == 1);
    REQUIRE(incidence(fib) * incidence(fib) == m2);

    // composing a non-primitive substitution with the exchange gives primitive ones
    Substitution quad = builtins::quad(), swap = builtins::swap();
    REQUIRE_FALSE(is_primitive(quad).primitive());
    REQUIRE(is_primitive(compose(quad, swap)).primitive());
    REQUIRE(is_primitive(compose(swap, quad)).primitive());
}

TEST_CASE("positivity and primitivity") {
    REQUIRE_FALSE(is_positive(builtins::fibonacci()));
    auto fib = is_primitive(builtins::fibonacci());
    REQUIRE(fib.primitive());
    REQUIRE(fib.witness == 2u);

    // b never produces a: not primitive, decided at the Wielandt bound
    auto quad = is_primitive(builtins::quad());
    REQUIRE(quad.verdict == PrimitivityResult::Verdict::not_primitive);

    // upper-triangular powers stay triangular
    auto mu = is_primitive(builtins::mu_a());
    REQUIRE(mu.verdict == PrimitivityResult::Verdict::not_primitive);

    // a short user bound cannot prove anything: unknown, not false
    auto small = is_primitive(incidence(builtins::fibonacci()), 1);
    REQUIRE(small.verdict == PrimitivityResult::Verdict::unknown);

    REQUIRE(is_positive(compose(builtins::thue_morse(), builtins::thue_morse())));
}

TEST_CASE("fixed point streams") {
    WordStream fib = fixed_point_stream(builtins::fibonacci(), 0);
    REQUIRE(fib.prefix(21).str() == "abaababaabaababaababa");

    WordStream tm = fixed_point_stream(builtins::thue_morse(), 0);
    REQUIRE(tm.prefix(16).str() == "abbabaabbaababba");

    // self-consistency: s(prefix(n)) begins with prefix(n)
    Substitution s = builtins::fibonacci();
    for (std::size_t n : {1u, 5u, 34u, 200u}) {
        FiniteWord p = fib.prefix(n);
        FiniteWord sp = apply(s, p);
        REQUIRE(sp.subword(0, n) == p);
    }

    // image must begin with the seed letter
    REQUIRE_THROWS_AS(fixed_point_stream(builtins::tau_b(), 0), precondition_error);
    // image of length 1 cannot generate anything
    REQUIRE_THROWS_AS(fixed_point_stream(builtins::tau_a(), 0), precondition_error);
}

TEST_CASE("perron data for the fibonacci matrix") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    PerronData pd = perron(incidence(builtins::fibonacci()), 1e-12);
    REQUIRE(pd.lambda == Approx(phi).epsilon(1e-10));
    REQUIRE(pd.right_eigenvector[0] == Approx(1.0 / phi).epsilon(1e-10));
    REQUIRE(pd.right_eigenvector[1] == Approx(1.0 / (phi * phi)).epsilon(1e-10));
    REQUIRE(pd.residual < 1e-9);

    // [[2,1],[1,1]] has dominant eigenvalue phi^2
    PerronData pd2 = perron(incidence(compose(builtins::fibonacci(), builtins::fibonacci())));
    REQUIRE(pd2.lambda == Approx(phi * phi).epsilon(1e-10));

    REQUIRE_THROWS_AS(perron(IntMatrix::identity(2)), precondition_error);
}

TEST_CASE("prefix-suffix automaton") {
    PrefixSuffixAutomaton aut = prefix_suffix_automaton(builtins::fibonacci());
    REQUIRE(aut.edges.size() == 3);  // sum of image lengths
    // sigma(a) = ab: (eps, a, b) and (a, b, eps); sigma(b) = a: (eps, a, eps)
    REQUIRE(aut.edges[0].from == 0);
    REQUIRE(aut.edges[0].to == 0);
    REQUIRE(aut.edges[0].prefix.empty());
    REQUIRE(aut.edges[0].suffix.str() == "b");
    REQUIRE(aut.edges[1].from == 0);
    REQUIRE(aut.edges[1].to == 1);
    REQUIRE(aut.edges[1].prefix.str() == "a");
    REQUIRE(aut.edges[1].suffix.empty());
    REQUIRE(aut.edges[2].from == 1);
    REQUIRE(aut.edges[2].to == 0);
    REQUIRE(aut.edges[2].prefix.empty());
    REQUIRE(aut.edges[2].suffix.empty());

    // every edge reassembles its image, and the count identity holds in general
    for (const auto& sub : {builtins::thue_morse(), builtins::mix3_a(), builtins::quad()}) {
        PrefixSuffixAutomaton a = prefix_suffix_automaton(sub);
        std::size_t total = 0;
        for (letter_t b = 0; b < sub.domain().size(); ++b) total += sub.image(b).size();
        REQUIRE(a.edges.size() == total);
        for (const auto& e : a.edges) {
            FiniteWord rebuilt = e.prefix;
            rebuilt.append(FiniteWord(sub.codomain(), {e.to}));
            rebuilt.append(e.suffix);
            REQUIRE(rebuilt == sub.image(e.from));
        }
    }

    // single-letter images: the automaton is the letter-mapping graph
    PrefixSuffixAutomaton sw = prefix_suffix_automaton(builtins::swap());
    REQUIRE(sw.edges.size() == 2);
    REQUIRE(sw.edges[0].prefix.empty());
    REQUIRE(sw.edges[0].suffix.empty());
}

TEST_CASE("builtin registry") {
    // every advertised fixed name resolves
    for (const char* name : {"fibonacci", "thue_morse", "tau_a", "tau_b", "mu_a", "mu_b",
                             "quad", "swap", "R", "L", "E_ab", "E_bc", "M_ab", "mix3_a",
                             "mix3_b"})
        REQUIRE(builtins::find(name).has_value());
    REQUIRE(builtins::find("ar4_3")->domain().size() == 4);
    REQUIRE(builtins::find("jp_2_5")->image(2).size() == 8);
    REQUIRE_FALSE(builtins::find("ar3_9").has_value());
    REQUIRE_FALSE(builtins::find("unknown").has_value());

    // the low-complexity set acts as documented
    Alphabet abc = Alphabet::latin(3);
    REQUIRE(apply(*builtins::find("R"), FiniteWord::parse(abc, "abc")).str() == "abbc");
    REQUIRE(apply(*builtins::find("L"), FiniteWord::parse(abc, "abc")).str() == "babc");
    REQUIRE(apply(*builtins::find("E_ab"), FiniteWord::parse(abc, "abc")).str() == "bac");
    REQUIRE(apply(*builtins::find("E_bc"), FiniteWord::parse(abc, "abc")).str() == "acb");
    REQUIRE(apply(*builtins::find("M_ab"), FiniteWord::parse(abc, "abc")).str() == "bbb");
    // the exchanges are permutations, the projection is not invertible
    REQUIRE(determinant(incidence(*builtins::find("E_ab"))) == -1);
    REQUIRE(determinant(incidence(*builtins::find("M_ab"))) == 0);
}

TEST_CASE("growth bounds from exact column sums") {
    std::vector<Substitution> fib5(5, builtins::fibonacci());
    GrowthBounds g0 = growth_bounds(fib5, 0);
    REQUIRE(g0.beta_minus == 1);
    REQUIRE(g0.beta_plus == 1);

    GrowthBounds g4 = growth_bounds(fib5, 4);
    REQUIRE(g4.beta_minus == 5);
    REQUIRE(g4.beta_plus == 8);
    GrowthBounds g5 = growth_bounds(fib5, 5);
    REQUIRE(g5.beta_minus == 8);
    REQUIRE(g5.beta_plus == 13);

    // cross-check against actual image lengths
    Substitution fib = builtins::fibonacci();
    FiniteWord ia = iterate(fib, FiniteWord::parse(fib.domain(), "a"), 5);
    FiniteWord ib = iterate(fib, FiniteWord::parse(fib.domain(), "b"), 5);
    REQUIRE(mpz_class(ib.size()) == g5.beta_minus);
    REQUIRE(mpz_class(ia.size()) == g5.beta_plus);

    // the quadratic generator never grows its b image
    std::vector<Substitution> quad(12, builtins::quad());
    for (std::size_t d = 1; d <= 12; ++d) REQUIRE(growth_bounds(quad, d).beta_minus == 1);
}
