/*
 * cf.hpp
 *
 * Continued-fraction maps as matrix/substitution selectors.  A map picks, for
 * a positive vector x, a branch (symbol, matrix M, substitution) with
 * M^{-1} x >= 0; iterating F(x) = M^{-1} x in exact rational arithmetic
 * records the expansion of x.  Ties and boundary directions halt rather than
 * choose arbitrarily: a halt marks a rational direction.
 *
 * Built-ins: the additive two-letter (Sturmian) map, the Arnoux-Rauzy map in
 * any dimension, and the Jacobi-Perron map in its linear integer form.
 * Multiplicative acceleration is a run-length grouping of an expansion, not
 * a separate algorithm.
 */

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sadic/builtins.hpp"
#include "sadic/directive.hpp"
#include "sadic/matrix.hpp"

namespace sadic {

using RatVector = std::vector<mpq_class>;

struct CFStep {
    std::string symbol;
    IntMatrix matrix;
    Substitution substitution;
};

struct CFSelection {
    std::optional<CFStep> step;  // nullopt = halt
    std::string halt_reason;
};

class CFMap {
public:
    using Selector = std::function<CFSelection(const RatVector&)>;
    using Validator = std::function<void(const RatVector&)>;  // throws on bad input

    CFMap(std::string name, std::size_t dimension, Selector selector,
          Validator validator = nullptr)
        : name_(std::move(name)), dimension_(dimension), selector_(std::move(selector)),
          validator_(std::move(validator)) {}

    const std::string& name() const { return name_; }
    std::size_t dimension() const { return dimension_; }
    CFSelection select(const RatVector& x) const { return selector_(x); }
    void validate_input(const RatVector& x) const {
        if (validator_) validator_(x);
    }

private:
    std::string name_;
    std::size_t dimension_;
    Selector selector_;
    Validator validator_;
};

struct CFExpansion {
    std::string map_name;
    RatVector input;
    std::vector<std::string> symbols;
    std::vector<IntMatrix> matrices;
    std::vector<Substitution> substitutions;
    std::vector<RatVector> remainders;  // F(x), F^2(x), ...
    bool halted = false;
    std::string halt_reason;

    std::size_t steps() const { return symbols.size(); }
};

/*
 * Run the map for at most `steps` steps.  The remainder is obtained by an
 * exact rational solve against the selected matrix, so the reconstruction
 * identity  x = M_{i_0} ... M_{i_{k-1}} F^k(x)  holds exactly at every k.
 */
inline CFExpansion cf_expand(const CFMap& map, RatVector x, std::size_t steps) {
    if (x.size() != map.dimension())
        throw precondition_error("cf_expand: vector dimension does not match the map");
    bool nonzero = false;
    for (const auto& c : x) {
        if (c < 0) throw precondition_error("cf_expand: vector must be non-negative");
        if (c > 0) nonzero = true;
    }
    if (!nonzero) throw precondition_error("cf_expand: vector must be non-zero");
    map.validate_input(x);

    CFExpansion exp;
    exp.map_name = map.name();
    exp.input = x;
    for (std::size_t k = 0; k < steps; ++k) {
        CFSelection sel = map.select(x);
        if (!sel.step) {
            exp.halted = true;
            exp.halt_reason = sel.halt_reason;
            break;
        }
        auto remainder = solve_exact(sel.step->matrix, x);
        if (!remainder)
            throw error("cf_expand: selected matrix is singular (map '" + map.name() + "')");
        for (auto& c : *remainder) {
            c.canonicalize();
            if (c < 0)
                throw error("cf_expand: selector soundness violation, negative remainder in map '" +
                            map.name() + "'");
        }
        exp.symbols.push_back(sel.step->symbol);
        exp.matrices.push_back(sel.step->matrix);
        exp.substitutions.push_back(sel.step->substitution);
        x = std::move(*remainder);
        exp.remainders.push_back(x);
    }
    return exp;
}

/* additive two-letter map: subtract the smaller coordinate from the larger */
inline CFMap sturmian_map() {
    Substitution ta = builtins::tau_a(), tb = builtins::tau_b();
    IntMatrix ma = incidence(ta), mb = incidence(tb);
    return CFMap("sturmian", 2, [ta, tb, ma, mb](const RatVector& x) -> CFSelection {
        if (x[0] > x[1]) return {CFStep{"a", ma, ta}, ""};
        if (x[1] > x[0]) return {CFStep{"b", mb, tb}, ""};
        return {std::nullopt, "tie (rational direction)"};
    });
}

/* Arnoux-Rauzy: branch i applies when x_i strictly dominates the other coordinates */
inline CFMap arnoux_rauzy_map(std::size_t d) {
    if (d < 2) throw precondition_error("arnoux_rauzy_map: need dimension >= 2");
    std::vector<Substitution> subs;
    std::vector<IntMatrix> mats;
    for (std::size_t i = 1; i <= d; ++i) {
        subs.push_back(builtins::arnoux_rauzy(d, i));
        mats.push_back(incidence(subs.back()));
    }
    return CFMap("arnoux-rauzy", d, [subs, mats, d](const RatVector& x) -> CFSelection {
        mpq_class total(0);
        for (const auto& c : x) total += c;
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] * 2 > total)
                return {CFStep{std::to_string(i + 1), mats[i], subs[i]}, ""};
        }
        return {std::nullopt, "no strictly dominant coordinate"};
    });
}

/*
 * Jacobi-Perron, linear form on the cone {0 < a, b < c}:
 *   (a, b, c) -> (b - Ba, c - Ca, a) with B = floor(b/a), C = floor(c/a),
 * recorded through the substitution 1 -> 2, 2 -> 3, 3 -> 1 2^B 3^C.
 */
inline CFMap jacobi_perron_map() {
    auto floor_div = [](const mpq_class& p, const mpq_class& q) -> unsigned long {
        mpq_class r = p / q;
        r.canonicalize();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        if (!mpz_fits_ulong_p(fl.get_mpz_t()))
            throw precondition_error("jacobi-perron: digit exceeds machine range");
        return fl.get_ui();
    };
    CFMap::Validator validator = [](const RatVector& x) {
        if (!(x[0] > 0)) throw precondition_error("jacobi-perron: input violates 0 < a");
        if (!(x[1] > 0)) throw precondition_error("jacobi-perron: input violates 0 < b");
        if (!(x[0] < x[2])) throw precondition_error("jacobi-perron: input violates a < c");
        if (!(x[1] < x[2])) throw precondition_error("jacobi-perron: input violates b < c");
    };
    return CFMap(
        "jacobi-perron", 3,
        [floor_div](const RatVector& x) -> CFSelection {
            if (x[0] == 0) return {std::nullopt, "zero coordinate a"};
            if (x[1] == 0) return {std::nullopt, "zero coordinate b"};
            if (x[2] == 0) return {std::nullopt, "zero coordinate c"};
            unsigned long B = floor_div(x[1], x[0]);
            unsigned long C = floor_div(x[2], x[0]);
            Substitution sub = builtins::jacobi_perron(B, C);
            return {CFStep{"(" + std::to_string(B) + "," + std::to_string(C) + ")",
                           incidence(sub), sub},
                    ""};
        },
        validator);
}

/* group consecutive equal symbols; matrices and substitutions become powers */
inline CFExpansion run_length_acceleration(const CFExpansion& exp) {
    CFExpansion acc;
    acc.map_name = exp.map_name + "+rle";
    acc.input = exp.input;
    acc.halted = exp.halted;
    acc.halt_reason = exp.halt_reason;
    std::size_t i = 0;
    while (i < exp.steps()) {
        std::size_t j = i;
        while (j + 1 < exp.steps() && exp.symbols[j + 1] == exp.symbols[i]) ++j;
        std::size_t count = j - i + 1;
        IntMatrix m = exp.matrices[i];
        Substitution s = exp.substitutions[i];
        for (std::size_t k = 1; k < count; ++k) {
            m = m * exp.matrices[i];
            s = compose(s, exp.substitutions[i]);
        }
        acc.symbols.push_back(exp.symbols[i] + "^" + std::to_string(count));
        acc.matrices.push_back(m);
        acc.substitutions.push_back(s);
        acc.remainders.push_back(exp.remainders[j]);
        i = j + 1;
    }
    return acc;
}

/*
 * Directive sequence reading off the substitutions of an expansion.  Finite
 * expansions stay finite (no periodic extension is invented); seeds are the
 * mechanical backward-compatible choice unless language_only is requested.
 */
inline DirectiveSequence directive_from_expansion(const CFExpansion& exp,
                                                  bool language_only = false) {
    if (exp.substitutions.empty())
        throw precondition_error("directive_from_expansion: empty expansion");
    if (language_only)
        return DirectiveSequence::explicit_finite_language_only(exp.substitutions);
    return DirectiveSequence::explicit_finite(exp.substitutions);
}

}  // namespace sadic
