/*
 * builtins.hpp
 *
 * Registry of named substitutions used throughout the library, tests and CLI:
 * the Fibonacci and Thue-Morse substitutions, the Sturmian pairs tau_a/tau_b
 * and mu_a/mu_b, Arnoux-Rauzy substitutions for any alphabet size, the
 * Jacobi-Perron family, the quadratic-complexity generator, and a few small
 * sets of three-letter substitutions (twists, exchanges, a projection, and a
 * strongly mixing pair).
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sadic/substitution.hpp"

namespace sadic {
namespace builtins {

inline Substitution fibonacci() {
    return Substitution::from_rules(Alphabet::latin(2), {"ab", "a"}, "fibonacci");
}

inline Substitution thue_morse() {
    return Substitution::from_rules(Alphabet::latin(2), {"ab", "ba"}, "thue_morse");
}

/* tau_a: a->a, b->ab and tau_b: a->ba, b->b; images start with the index letter */
inline Substitution tau_a() {
    return Substitution::from_rules(Alphabet::latin(2), {"a", "ab"}, "tau_a");
}
inline Substitution tau_b() {
    return Substitution::from_rules(Alphabet::latin(2), {"ba", "b"}, "tau_b");
}

/* mu_a: a->a, b->ba and mu_b: a->ab, b->b; images end with the index letter */
inline Substitution mu_a() {
    return Substitution::from_rules(Alphabet::latin(2), {"a", "ba"}, "mu_a");
}
inline Substitution mu_b() {
    return Substitution::from_rules(Alphabet::latin(2), {"ab", "b"}, "mu_b");
}

/* quadratic-complexity generator: a -> aab, b -> b (not everywhere growing) */
inline Substitution quad() {
    return Substitution::from_rules(Alphabet::latin(2), {"aab", "b"}, "quad");
}

/* two-letter exchange a <-> b */
inline Substitution swap() {
    return Substitution::from_rules(Alphabet::latin(2), {"b", "a"}, "swap");
}

/* Arnoux-Rauzy on d letters: i -> i, j -> j i for j != i (alphabet "1".."d") */
inline Substitution arnoux_rauzy(std::size_t d, std::size_t i) {
    if (d < 2) throw precondition_error("arnoux_rauzy: need at least two letters");
    if (i < 1 || i > d) throw precondition_error("arnoux_rauzy: index letter out of range");
    Alphabet alpha = Alphabet::numeric(d);
    std::vector<FiniteWord> images;
    letter_t li = static_cast<letter_t>(i - 1);
    for (letter_t j = 0; j < d; ++j) {
        if (j == li)
            images.push_back(FiniteWord(alpha, {j}));
        else
            images.push_back(FiniteWord(alpha, {j, li}));
    }
    return Substitution(alpha, alpha, std::move(images),
                        "ar" + std::to_string(d) + "_" + std::to_string(i));
}

/* Jacobi-Perron: 1 -> 2, 2 -> 3, 3 -> 1 2^B 3^C over "1","2","3" */
inline Substitution jacobi_perron(unsigned long B, unsigned long C) {
    Alphabet alpha = Alphabet::numeric(3);
    std::vector<letter_t> third{0};
    for (unsigned long k = 0; k < B; ++k) third.push_back(1);
    for (unsigned long k = 0; k < C; ++k) third.push_back(2);
    std::vector<FiniteWord> images{FiniteWord(alpha, {1}), FiniteWord(alpha, {2}),
                                   FiniteWord(alpha, std::move(third))};
    return Substitution(alpha, alpha, std::move(images),
                        "jp_" + std::to_string(B) + "_" + std::to_string(C));
}

/* three-letter set generating all words with small complexity differences */
inline Substitution twist_R() {
    return Substitution::from_rules(Alphabet::latin(3), {"ab", "b", "c"}, "R");
}
inline Substitution twist_L() {
    return Substitution::from_rules(Alphabet::latin(3), {"ba", "b", "c"}, "L");
}
inline Substitution exchange_ab() {
    return Substitution::from_rules(Alphabet::latin(3), {"b", "a", "c"}, "E_ab");
}
inline Substitution exchange_bc() {
    return Substitution::from_rules(Alphabet::latin(3), {"a", "c", "b"}, "E_bc");
}
inline Substitution project_b() {
    return Substitution::from_rules(Alphabet::latin(3), {"b", "b", "b"}, "M_ab");
}

/* a strongly mixing three-letter pair (uniformly recurrent, not proper) */
inline Substitution mix3_a() {
    return Substitution::from_rules(Alphabet::latin(3), {"acb", "bab", "cbc"}, "mix3_a");
}
inline Substitution mix3_b() {
    return Substitution::from_rules(Alphabet::latin(3), {"abc", "acb", "aac"}, "mix3_b");
}

inline std::vector<std::string> names() {
    return {"fibonacci", "thue_morse", "tau_a", "tau_b", "mu_a",  "mu_b",
            "quad",      "swap",       "R",     "L",     "E_ab",  "E_bc",
            "M_ab",      "mix3_a",     "mix3_b", "ar{d}_{i}", "jp_{B}_{C}"};
}

/* Look up by name; understands the parametric ar{d}_{i} and jp_{B}_{C} forms. */
inline std::optional<Substitution> find(const std::string& name) {
    if (name == "fibonacci") return fibonacci();
    if (name == "thue_morse" || name == "tm") return thue_morse();
    if (name == "tau_a") return tau_a();
    if (name == "tau_b") return tau_b();
    if (name == "mu_a") return mu_a();
    if (name == "mu_b") return mu_b();
    if (name == "quad") return quad();
    if (name == "swap") return swap();
    if (name == "R") return twist_R();
    if (name == "L") return twist_L();
    if (name == "E_ab") return exchange_ab();
    if (name == "E_bc") return exchange_bc();
    if (name == "M_ab") return project_b();
    if (name == "mix3_a") return mix3_a();
    if (name == "mix3_b") return mix3_b();
    auto parse_two = [&](const std::string& prefix) -> std::optional<std::pair<long, long>> {
        if (name.rfind(prefix, 0) != 0) return std::nullopt;
        std::string rest = name.substr(prefix.size());
        auto sep = rest.find('_');
        if (sep == std::string::npos) return std::nullopt;
        try {
            long x = std::stol(rest.substr(0, sep));
            long y = std::stol(rest.substr(sep + 1));
            if (x < 0 || y < 0) return std::nullopt;
            return std::make_pair(x, y);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    if (auto p = parse_two("ar")) {
        if (p->first >= 2 && p->second >= 1 && p->second <= p->first)
            return arnoux_rauzy(static_cast<std::size_t>(p->first),
                                static_cast<std::size_t>(p->second));
    }
    if (auto p = parse_two("jp_")) {
        return jacobi_perron(static_cast<unsigned long>(p->first),
                             static_cast<unsigned long>(p->second));
    }
    return std::nullopt;
}

}  // namespace builtins
}  // namespace sadic
