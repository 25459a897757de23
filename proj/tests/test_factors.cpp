#include <catch2/catch.hpp>

#include <cmath>
#include <set>

#include "sadic/builtins.hpp"
#include "sadic/factors.hpp"
#include "sadic/substitution.hpp"

using namespace sadic;

namespace {

/* oracle: sliding-window factor enumeration, independent of the automaton */
std::set<std::vector<letter_t>> windows_of(const std::vector<letter_t>& text, std::size_t n) {
    std::set<std::vector<letter_t>> out;
    for (std::size_t i = 0; i + n <= text.size(); ++i)
        out.insert(std::vector<letter_t>(text.begin() + i, text.begin() + i + n));
    return out;
}

/* the word 0 1 00 11 000 111 ... as a stream over {a, b} */
WordStream power_blocks_stream() {
    return WordStream(Alphabet::latin(2), [](std::vector<letter_t>& buf, std::size_t target) {
        std::size_t k = 1;
        buf.clear();
        while (buf.size() < target) {
            for (std::size_t i = 0; i < k; ++i) buf.push_back(0);
            for (std::size_t i = 0; i < k; ++i) buf.push_back(1);
            ++k;
        }
        return true;
    }, "power blocks");
}

}  // namespace

TEST_CASE("factor tables agree with the sliding-window oracle") {
    WordStream fib = fixed_point_stream(builtins::fibonacci(), 0);
    // the printed 21-letter prefix, checked against brute force
    FactorTable t = factors(fib, 21, 6);
    std::vector<letter_t> text = fib.prefix_letters(21);
    for (std::size_t n = 1; n <= 6; ++n) {
        auto oracle = windows_of(text, n);
        REQUIRE(t.p(n) == oracle.size());
        std::set<std::vector<letter_t>> got;
        for (const auto& w : t.factors_of(n)) got.insert(w.letters());
        REQUIRE(got == oracle);
    }
    // and on a mixed three-letter word
    WordStream mix = fixed_point_stream(builtins::mix3_a(), 0);
    FactorTable t3 = factors(mix, 200, 8);
    std::vector<letter_t> text3 = mix.prefix_letters(200);
    for (std::size_t n = 1; n <= 8; ++n) REQUIRE(t3.p(n) == windows_of(text3, n).size());
}

TEST_CASE("fibonacci factor counts") {
    WordStream fib = fixed_point_stream(builtins::fibonacci(), 0);
    FactorTable t = factors(fib, 10000, 30);
    REQUIRE(t.p(3) == 4);
    for (std::size_t n = 1; n <= 30; ++n) REQUIRE(t.p(n) == n + 1);
    auto dp = t.first_differences();
    for (long long d : dp) REQUIRE(d == 1);
}

TEST_CASE("trivial factor tables") {
    Alphabet a = Alphabet::latin(2);
    WordStream constant = WordStream::constant(a, 0);
    FactorTable t = factors(constant, 100, 10);
    for (std::size_t n = 1; n <= 10; ++n) {
        REQUIRE(t.p(n) == 1);
        REQUIRE(t.factors_of(n)[0].str() == std::string(n, 'a'));
    }

    // prefix_len == max_n: exactly one factor at the top length
    WordStream fib = fixed_point_stream(builtins::fibonacci(), 0);
    FactorTable edge = factors(fib, 8, 8);
    REQUIRE(edge.p(8) == 1);

    REQUIRE_THROWS_AS(factors(fib, 5, 6), precondition_error);
    REQUIRE_THROWS_AS(factors(fib, 5, 0), precondition_error);

    // short finite stream names the available length
    WordStream shorty = WordStream::from_word(FiniteWord::parse(a, "ab"));
    REQUIRE_THROWS_AS(factors(shorty, 10, 2), short_stream);
}

TEST_CASE("power-block word has quadratic complexity") {
    FactorTable t = factors(power_blocks_stream(), 5000, 20);
    for (std::size_t n = 1; n <= 20; ++n) REQUIRE(t.p(n) == n * (n + 1) / 2 + 1);
}

TEST_CASE("complexity is submultiplicative on windows") {
    for (const auto& sub : {builtins::fibonacci(), builtins::thue_morse(), builtins::mix3_a()}) {
        WordStream s = fixed_point_stream(sub, 0);
        FactorTable t = factors(s, 20000, 16);
        for (std::size_t m = 1; m <= 8; ++m)
            for (std::size_t n = 1; m + n <= 16; ++n)
                REQUIRE(t.p(m + n) <= t.p(m) * t.p(n));
    }
}

TEST_CASE("complexity transfer under substitution") {
    // p_{s(u)}(n) <= max|s(a)| * p_u(n) on shared windows
    Substitution tm = builtins::thue_morse();
    WordStream fib = fixed_point_stream(builtins::fibonacci(), 0);
    FiniteWord u = fib.prefix(4000);
    FiniteWord su = apply(tm, u);
    FactorTable tu = factor_table_of_window(u.alphabet(), u.letters(), 12);
    FactorTable tsu = factor_table_of_window(su.alphabet(), su.letters(), 12);
    std::size_t longest = 0;
    for (letter_t a = 0; a < tm.domain().size(); ++a)
        longest = std::max(longest, tm.image(a).size());
    for (std::size_t n = 1; n <= 12; ++n) REQUIRE(tsu.p(n) <= longest * tu.p(n));
}

TEST_CASE("entropy estimates") {
    // polynomial complexity drifts to zero
    std::vector<std::size_t> poly;
    for (std::size_t n = 1; n <= 400; ++n) poly.push_back(n + 1);
    EntropyEstimate e1 = entropy_estimate(poly);
    REQUIRE(e1.at_max < 0.02);
    REQUIRE(e1.per_n.front() > e1.at_max);

    // p(n) = 2^n gives log 2 exactly
    std::vector<std::size_t> expo;
    for (std::size_t n = 1; n <= 20; ++n) expo.push_back(std::size_t(1) << n);
    EntropyEstimate e2 = entropy_estimate(expo);
    REQUIRE(e2.at_max == Approx(std::log(2.0)).epsilon(1e-12));

    // single factor: exactly zero
    EntropyEstimate e3 = entropy_estimate(std::vector<std::size_t>(10, 1));
    REQUIRE(e3.at_max == 0.0);

    REQUIRE_THROWS_AS(entropy_estimate({}), precondition_error);
}

TEST_CASE("stabilization heuristic") {
    WordStream fib = fixed_point_stream(builtins::fibonacci(), 0);
    REQUIRE(stable_complexity_depth(fib, 8000, 20) == 20);

    // power-block word: small windows miss long factors, so stability is partial
    std::size_t stable = stable_complexity_depth(power_blocks_stream(), 400, 30);
    REQUIRE(stable < 30);
}
