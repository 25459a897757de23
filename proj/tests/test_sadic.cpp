#include <catch2/catch.hpp>

#include <cmath>

#include "sadic/builtins.hpp"
#include "sadic/factors.hpp"
#include "sadic/graph.hpp"
#include "sadic/recurrence.hpp"
#include "sadic/sadic.hpp"

using namespace sadic;

namespace {
const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

DirectiveSequence fibonacci_ds() { return DirectiveSequence::periodic({builtins::fibonacci()}); }

FiniteWord compose_image(const std::vector<Substitution>& chain, letter_t seed) {
    FiniteWord w(chain.back().domain(), {seed});
    for (std::size_t i = chain.size(); i-- > 0;) w = apply(chain[i], w);
    return w;
}
}  // namespace

TEST_CASE("limit word of the periodic fibonacci sequence") {
    WordStream s = limit_word_stream(fibonacci_ds());
    REQUIRE(s.prefix(21).str() == "abaababaabaababaababa");
}

TEST_CASE("sturmian limit words from either seed coincide") {
    std::vector<Substitution> cycle{builtins::tau_a(), builtins::tau_b()};
    DirectiveSequence ds = DirectiveSequence::periodic(cycle);
    WordStream s = limit_word_stream(ds);
    FiniteWord p = s.prefix(400);

    // the shortest of the two depth-n images is a prefix of the limit word
    std::vector<Substitution> chain;
    for (int i = 0; i < 16; ++i) chain.push_back(cycle[i % 2]);
    FiniteWord from_a = compose_image(chain, 0);
    FiniteWord from_b = compose_image(chain, 1);
    REQUIRE(from_a.size() >= 400);
    REQUIRE(from_b.size() >= 400);
    REQUIRE(from_a.subword(0, 400) == p);
    REQUIRE(from_b.subword(0, 400) == p);
}

TEST_CASE("ultimately constant tau_a stalls") {
    DirectiveSequence ds = DirectiveSequence::periodic({builtins::tau_a()});
    WordStream s = limit_word_stream(ds, 16);
    REQUIRE_THROWS_WITH(s.prefix(5), Catch::Contains("not everywhere growing"));
}

TEST_CASE("seed incompatibility is reported with its index") {
    // explicit wrong seeds: tau_b images never start with a
    std::vector<Substitution> chain{builtins::tau_b(), builtins::tau_b()};
    DirectiveSequence ds =
        DirectiveSequence::explicit_finite(chain, std::vector<letter_t>{0, 0, 0});
    WordStream s = limit_word_stream(ds);
    REQUIRE_THROWS_WITH(s.prefix(3), Catch::Contains("seed incompatibility at index 0"));
}

TEST_CASE("language-only sequences refuse limit words") {
    DirectiveSequence ds =
        DirectiveSequence::explicit_finite_language_only({builtins::fibonacci()});
    REQUIRE_THROWS_AS(limit_word_stream(ds), precondition_error);
}

TEST_CASE("sadic language at depth matches the fixed point on a window") {
    DirectiveSequence ds = fibonacci_ds();
    FactorTable lang = sadic_language(ds, 12, 12);
    WordStream s = limit_word_stream(ds);
    FactorTable ref = factors(s, 20000, 12);
    for (std::size_t n = 1; n <= 12; ++n) {
        REQUIRE(lang.p(n) == ref.p(n));
        REQUIRE(lang.factors_of(n) == ref.factors_of(n));
    }
}

TEST_CASE("sadic language at depth zero is everything") {
    FactorTable lang = sadic_language(fibonacci_ds(), 0, 5);
    for (std::size_t n = 1; n <= 5; ++n) REQUIRE(lang.p(n) == (std::size_t(1) << n));
}

TEST_CASE("quadratic-generator language contains a b^k a") {
    DirectiveSequence ds = DirectiveSequence::periodic({builtins::quad()});
    std::size_t max_len = 10;
    FactorTable lang = sadic_language(ds, 12, max_len);
    const Alphabet& alpha = lang.alphabet();
    for (std::size_t k = 0; k + 2 <= max_len; ++k) {
        std::vector<letter_t> w{0};
        for (std::size_t i = 0; i < k; ++i) w.push_back(1);
        w.push_back(0);
        REQUIRE(lang.contains(FiniteWord(alpha, w)));
    }
}

TEST_CASE("deeper truncations never add factors") {
    DirectiveSequence ds = DirectiveSequence::periodic({builtins::quad()});
    for (std::size_t depth = 0; depth < 5; ++depth) {
        FactorTable shallow = sadic_language(ds, depth, 5);
        FactorTable deep = sadic_language(ds, depth + 1, 5);
        for (std::size_t n = 1; n <= 5; ++n)
            for (const auto& w : deep.factors_of(n)) REQUIRE(shallow.contains(w));
    }
}

TEST_CASE("everywhere growing checks") {
    auto fib = everywhere_growing_check(fibonacci_ds(), 20);
    REQUIRE(fib.growing);
    // beta profile: fibonacci numbers 1, 1, 2, 3, 5, ...
    REQUIRE(fib.beta_minus[5] == 8);

    DirectiveSequence id =
        DirectiveSequence::periodic({Substitution::identity(Alphabet::latin(2))});
    REQUIRE_FALSE(everywhere_growing_check(id, 20).growing);

    DirectiveSequence quad = DirectiveSequence::periodic({builtins::quad()});
    REQUIRE_FALSE(everywhere_growing_check(quad, 20).growing);
}

TEST_CASE("primitivity scan over chains") {
    auto fib = primitivity_check(fibonacci_ds(), 0, 4, 6);
    REQUIRE(fib.strong_r == 1u);
    for (const auto& w : fib.weak) REQUIRE(w.r == 1u);

    // identity chain: no positive product, reported as exhaustion (unknown)
    DirectiveSequence id =
        DirectiveSequence::periodic({Substitution::identity(Alphabet::latin(2))});
    auto sc = primitivity_check(id, 0, 8, 4);
    REQUIRE(sc.exhausted);
    REQUIRE_FALSE(sc.strong_r.has_value());

    // random three-letter Arnoux-Rauzy chain: weak witnesses at every start
    SplitMix64 rng(7);
    auto subs = [&](std::size_t n) -> std::optional<Substitution> {
        SplitMix64 local(n * 0x9e3779b97f4a7c15ULL + 7);
        return builtins::arnoux_rauzy(3, 1 + local.below(3));
    };
    DirectiveSequence ar = DirectiveSequence::functional(
        subs, [](std::size_t) -> std::optional<letter_t> { return 0; }, "ar-random");
    auto arscan = primitivity_check(ar, 0, 32, 6);
    REQUIRE_FALSE(arscan.exhausted);
    for (const auto& w : arscan.weak) REQUIRE(w.r.has_value());

    // weak primitivity shows up as recurrence: R(m) is determined on a long
    // window for every small m
    WordStream aw = limit_word_stream(ar);
    RecurrenceReport rr = recurrence_function(aw, 50000, 8);
    for (std::size_t m = 1; m <= 8; ++m) REQUIRE(rr.R[m - 1].has_value());
}

TEST_CASE("generalized eigenvector of the fibonacci sequence") {
    FrequencyResult res = generalized_eigenvector(fibonacci_ds(), 1e-10);
    REQUIRE(res.converged);
    REQUIRE(res.f[0] == Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-9));
    REQUIRE(res.f[1] == Approx(1.0 / (phi * phi)).epsilon(1e-9));
    REQUIRE(res.f[0] + res.f[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("cone route agrees with the power-iteration route") {
    Substitution fib2 = compose(builtins::fibonacci(), builtins::fibonacci());
    DirectiveSequence ds = DirectiveSequence::periodic({fib2});
    FrequencyResult cone = generalized_eigenvector(ds, 1e-12);
    PerronData pd = perron(incidence(fib2), 1e-12);
    REQUIRE(cone.converged);
    for (std::size_t i = 0; i < 2; ++i)
        REQUIRE(cone.f[i] == Approx(pd.right_eigenvector[i]).epsilon(1e-9));
}

TEST_CASE("permutation cones never contract") {
    DirectiveSequence ds = DirectiveSequence::periodic({builtins::swap()});
    FrequencyResult res = generalized_eigenvector(ds, 1e-10, 100);
    REQUIRE_FALSE(res.converged);
    REQUIRE(std::isinf(res.diameter));
}

TEST_CASE("cone diameters do not increase once a positive block occurred") {
    DirectiveSequence ds = fibonacci_ds();
    double prev = projective_diameter(ds.product(2));
    for (std::size_t n = 3; n <= 24; ++n) {
        double cur = projective_diameter(ds.product(n));
        REQUIRE(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("convergence profile of the fibonacci sequence") {
    DirectiveSequence ds = fibonacci_ds();
    FrequencyResult f = generalized_eigenvector(ds, 1e-12);

    // depth 0: distances of the raw basis vectors
    ConvergenceProfile p0 = convergence_profile(ds, f.f, 0);
    for (std::size_t i = 0; i < 2; ++i) {
        double expect2 = 0.0;
        for (std::size_t k = 0; k < 2; ++k) {
            double e = (k == i ? 1.0 : 0.0) - f.f[k];
            expect2 += e * e;
        }
        REQUIRE(p0.weak[i] == Approx(std::sqrt(expect2)).margin(1e-12));
    }

    // weak distances shrink like phi^{-2n}
    for (std::size_t n : {10u, 14u, 18u}) {
        ConvergenceProfile pa = convergence_profile(ds, f.f, n);
        ConvergenceProfile pb = convergence_profile(ds, f.f, n + 1);
        for (std::size_t i = 0; i < 2; ++i)
            REQUIRE(pb.weak[i] / pa.weak[i] == Approx(1.0 / (phi * phi)).margin(0.02));
    }

    // strong distance over column norm tracks the weak distance at small angles
    ConvergenceProfile p = convergence_profile(ds, f.f, 16);
    IntMatrix a = ds.product(16);
    for (std::size_t i = 0; i < 2; ++i) {
        double colnorm = 0.0;
        for (std::size_t k = 0; k < 2; ++k) {
            double c = a(k, i).get_d();
            colnorm += c * c;
        }
        colnorm = std::sqrt(colnorm);
        double ratio = (p.strong[i] / colnorm) / p.weak[i];
        REQUIRE(ratio > 0.3);
        REQUIRE(ratio < 3.0);
    }

    // delta profile shrinks with depth
    REQUIRE(convergence_profile(ds, f.f, 20).delta <
            convergence_profile(ds, f.f, 6).delta);
}

TEST_CASE("balance criterion terms decay geometrically for fibonacci") {
    BalanceCriterionReport rep = balance_criterion_partial_sums(fibonacci_ds(), 30);
    REQUIRE(rep.decaying);
    // exact terms are phi^(1-n): every ratio equals 1/phi
    for (std::size_t i = 5; i < rep.ratios.size(); ++i)
        REQUIRE(rep.ratios[i] == Approx(1.0 / phi).epsilon(1e-6));
    REQUIRE(rep.verdict.find("criterion satisfied") == 0);
}

TEST_CASE("balance criterion first term is the norm of M_0") {
    BalanceCriterionReport rep = balance_criterion_partial_sums(
        fibonacci_ds(), 1, std::vector<mpq_class>{mpq_class(2, 3), mpq_class(1, 3)});
    REQUIRE(rep.terms.size() == 1);
    // ||I restricted to f-perp|| = 1, so the term is ||M_0||_2 = phi
    REQUIRE(rep.terms[0] == Approx(phi).epsilon(1e-9));
}

TEST_CASE("an eigenvalue-one direction in f-perp blocks decay") {
    DirectiveSequence ds = DirectiveSequence::periodic({builtins::tau_a()});
    // cone limit direction is e_a; its orthogonal is fixed by the transpose
    std::vector<mpq_class> f{1, 0};
    BalanceCriterionReport rep = balance_criterion_partial_sums(ds, 20, f);
    REQUIRE_FALSE(rep.decaying);
    for (double t : rep.terms) REQUIRE(t >= rep.terms.front() - 1e-9);
}

TEST_CASE("entropy upper bounds") {
    EntropyBound eb = entropy_upper_bound(fibonacci_ds(), 20);
    REQUIRE(eb.bound <= 1.1e-4);
    REQUIRE(eb.per_depth[0] == Approx(std::log(2.0)));

    // the quadratic generator is stuck at log 2 (its b image never grows)
    EntropyBound quad = entropy_upper_bound(DirectiveSequence::periodic({builtins::quad()}), 20);
    REQUIRE(quad.bound == Approx(std::log(2.0)));

    // finite-window bound dominates the measured complexity of the window
    WordStream s = limit_word_stream(fibonacci_ds());
    FactorTable t = factors(s, 100000, 200);
    double measured = std::log(static_cast<double>(t.p(200))) / 200.0;
    EntropyBound fin = finite_window_complexity_bound(fibonacci_ds(), 200, 20);
    REQUIRE(measured < fin.bound);
    REQUIRE(fin.bound < 0.05);
}

TEST_CASE("cassaigne expansion reproduces the word and never grows") {
    Alphabet abc = Alphabet::latin(3);
    FiniteWord w = FiniteWord::parse(abc, "abc");
    DirectiveSequence ds = cassaigne_expansion(w);
    WordStream s = limit_word_stream(ds);
    REQUIRE(s.prefix(3).str() == "abc");
    // the chain ends exactly at the word: one letter more is unavailable
    REQUIRE_THROWS_AS(s.prefix(4), short_stream);
    REQUIRE(s.finite_length() == 3u);
    REQUIRE_FALSE(everywhere_growing_check(ds, 3).growing);

    // bound stuck at log(d+1) / 1
    EntropyBound eb = entropy_upper_bound(ds, 3);
    REQUIRE(eb.bound == Approx(std::log(4.0)));

    // random word round trip
    SplitMix64 rng(123);
    std::vector<letter_t> letters;
    for (int i = 0; i < 1000; ++i) letters.push_back(static_cast<letter_t>(rng.below(3)));
    FiniteWord rw(abc, letters);
    DirectiveSequence rds = cassaigne_expansion(rw);
    WordStream rs = limit_word_stream(rds);
    REQUIRE(rs.prefix(1000).letters() == letters);
}

TEST_CASE("bounded against unbounded power blocks") {
    // periodic quad-tm chain keeps p(n)/n small; growing quad powers push the
    // ratio strictly higher on the same scan (the full calibration lives in
    // the acceptance suite)
    std::vector<Substitution> bounded_cycle{builtins::quad(), builtins::thue_morse()};
    DirectiveSequence bounded = DirectiveSequence::periodic(bounded_cycle);
    WordStream bs = limit_word_stream(bounded);
    FactorTable bt = factors(bs, 100000, 100);
    double bounded_max = 0.0;
    for (std::size_t n = 1; n <= 100; ++n) {
        double r = static_cast<double>(bt.p(n)) / static_cast<double>(n);
        REQUIRE(r <= 6.0);
        bounded_max = std::max(bounded_max, r);
    }

    std::vector<Substitution> unbounded_chain;
    for (int k = 0; k <= 12; ++k) {
        for (int i = 0; i < k; ++i) unbounded_chain.push_back(builtins::quad());
        unbounded_chain.push_back(builtins::thue_morse());
    }
    DirectiveSequence unbounded = DirectiveSequence::explicit_finite(unbounded_chain);
    WordStream us = limit_word_stream(unbounded);
    FactorTable ut = factors(us, 100000, 100);
    double unbounded_max = 0.0;
    for (std::size_t n = 1; n <= 100; ++n)
        unbounded_max = std::max(unbounded_max,
                                 static_cast<double>(ut.p(n)) / static_cast<double>(n));
    REQUIRE(unbounded_max > bounded_max);
}
