/*
 * sadic.hpp
 *
 * Analyses of directive sequences: limit words, truncated languages,
 * everywhere-growing and primitivity checks, letter frequencies via nested
 * matrix cones, convergence profiles, the balancedness criterion partial
 * sums, and entropy upper bounds.  The Cassaigne expansion (which represents
 * an arbitrary word at the cost of a non-growing extra letter) lives here
 * too.
 *
 * Everything is window/depth-relative and says so: verdicts are "observed up
 * to depth n", never claims about the infinite object.
 */

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sadic/builtins.hpp"
#include "sadic/directive.hpp"
#include "sadic/factors.hpp"
#include "sadic/matrix.hpp"

namespace sadic {

/*
 * Limit word of the directive sequence: prefix(m) is the first m letters of
 * sigma_[0,n)(a_n) for the smallest adequate n.  Seed compatibility
 * (sigma_n(a_{n+1}) begins with a_n) is verified at every step, which makes
 * the approximants nested by construction.  If the approximant length fails
 * to grow for stall_limit consecutive steps the stream refuses to continue.
 */
inline WordStream limit_word_stream(const DirectiveSequence& ds, std::size_t stall_limit = 64) {
    if (!ds.has_seeds())
        throw precondition_error(
            "limit word: directive sequence has no seeds (language-only mode)");

    struct Gen {
        DirectiveSequence ds;
        std::size_t stall_limit = 64;
        std::size_t depth = 0;
        std::size_t stall = 0;
        bool exhausted = false;
        bool started = false;
        std::vector<std::vector<letter_t>> images;  // sigma_[0,depth)(c) per c in A_depth

        bool operator()(std::vector<letter_t>& buf, std::size_t target) {
            if (!started) {
                Alphabet a0 = ds.alphabet_at(0);
                images.resize(a0.size());
                for (letter_t c = 0; c < a0.size(); ++c) images[c] = {c};
                auto seed0 = ds.seed(0);
                if (!seed0) throw precondition_error("limit word: missing seed a_0");
                buf = images[*seed0];
                started = true;
            }
            while (buf.size() < target) {
                if (exhausted) return false;
                auto sub = ds.substitution(depth);
                if (!sub) {  // finite chain: the current approximant is the word
                    exhausted = true;
                    return false;
                }
                auto a_cur = ds.seed(depth);
                auto a_next = ds.seed(depth + 1);
                if (!a_cur || !a_next)
                    throw precondition_error("limit word: missing seed at index " +
                                             std::to_string(depth + (a_cur ? 1 : 0)));
                if (sub->codomain().size() != images.size())
                    throw alphabet_mismatch("limit word: chain breaks at index " +
                                            std::to_string(depth));
                const FiniteWord& seed_img = sub->image(*a_next);
                if (seed_img[0] != *a_cur)
                    throw precondition_error(
                        "limit word: seed incompatibility at index " + std::to_string(depth) +
                        ": sigma_" + std::to_string(depth) + "(" +
                        sub->domain().letter(*a_next) + ") does not begin with " +
                        sub->codomain().letter(*a_cur));

                std::vector<std::vector<letter_t>> next(sub->domain().size());
                for (letter_t b = 0; b < sub->domain().size(); ++b) {
                    std::vector<letter_t>& out = next[b];
                    for (letter_t c : sub->image(b).letters())
                        out.insert(out.end(), images[c].begin(), images[c].end());
                }
                std::size_t before = buf.size();
                buf = next[*a_next];
                images = std::move(next);
                ++depth;
                if (buf.size() == before) {
                    if (++stall >= stall_limit)
                        throw precondition_error(
                            "limit word: not everywhere growing up to depth " +
                            std::to_string(depth) + " (no length increase for " +
                            std::to_string(stall) + " steps)");
                } else {
                    stall = 0;
                }
            }
            return true;
        }
    };

    Gen gen;
    gen.ds = ds;
    gen.stall_limit = stall_limit;
    return WordStream(ds.alphabet_at(0), std::move(gen),
                      "limit word of " + ds.kind_label() + " directive sequence");
}

/*
 * Depth-n truncation of the language: all factors of length <= max_len of
 * concatenations of the words sigma_[0,n)(c), c in A_n.  Enumerated through
 * the position automaton of the image set, so the cost is proportional to
 * the output rather than to the number of concatenations.
 */
inline FactorTable sadic_language(const DirectiveSequence& ds, std::size_t depth,
                                  std::size_t max_len) {
    if (max_len < 1) throw precondition_error("sadic_language: max_len must be >= 1");
    Alphabet a0 = ds.alphabet_at(0);

    // images of all letters at the requested depth
    std::vector<std::vector<letter_t>> images(a0.size());
    for (letter_t c = 0; c < a0.size(); ++c) images[c] = {c};
    for (std::size_t k = 0; k < depth; ++k) {
        auto sub = ds.substitution(k);
        if (!sub)
            throw precondition_error("sadic_language: depth " + std::to_string(depth) +
                                     " exceeds chain length " + std::to_string(k));
        std::vector<std::vector<letter_t>> next(sub->domain().size());
        for (letter_t b = 0; b < sub->domain().size(); ++b)
            for (letter_t c : sub->image(b).letters())
                next[b].insert(next[b].end(), images[c].begin(), images[c].end());
        images = std::move(next);
    }

    // positions: (image index, offset); an extra id for "between words"
    struct Pos {
        std::size_t word, off;
    };
    std::vector<Pos> positions;
    std::vector<std::size_t> word_start;  // position id of (w, 0)
    for (std::size_t w = 0; w < images.size(); ++w) {
        word_start.push_back(positions.size());
        for (std::size_t o = 0; o < images[w].size(); ++o) positions.push_back(Pos{w, o});
    }
    const std::size_t HUB = positions.size();

    auto letter_at = [&](std::size_t pos) { return images[positions[pos].word][positions[pos].off]; };
    auto successor = [&](std::size_t pos) -> std::size_t {
        const Pos& p = positions[pos];
        return p.off + 1 < images[p.word].size() ? word_start[p.word] + p.off + 1 : HUB;
    };

    // state set = sorted list of position ids (HUB expands to every word start)
    using StateSet = std::vector<std::size_t>;
    auto expand_hub = [&](StateSet& s) {
        if (!s.empty() && s.back() == HUB) {
            s.pop_back();
            for (std::size_t w = 0; w < images.size(); ++w)
                if (!images[w].empty()) s.push_back(word_start[w]);
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
    };

    std::map<std::vector<letter_t>, StateSet> layer;
    {
        StateSet all;
        for (std::size_t i = 0; i < positions.size(); ++i) all.push_back(i);
        for (std::size_t p : all) {
            std::vector<letter_t> f{letter_at(p)};
            StateSet& s = layer[f];
            s.push_back(successor(p));
        }
        for (auto& [f, s] : layer) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            expand_hub(s);
        }
    }

    std::vector<std::vector<FiniteWord>> by_length(max_len);
    std::size_t total_text = 0;
    for (const auto& w : images) total_text += w.size();
    for (std::size_t n = 1; n <= max_len; ++n) {
        for (const auto& [f, s] : layer) by_length[n - 1].push_back(FiniteWord(a0, f));
        std::sort(by_length[n - 1].begin(), by_length[n - 1].end());
        if (n == max_len) break;
        std::map<std::vector<letter_t>, StateSet> next_layer;
        for (const auto& [f, s] : layer) {
            std::map<letter_t, StateSet> by_letter;
            for (std::size_t p : s) by_letter[letter_at(p)].push_back(successor(p));
            for (auto& [c, succ] : by_letter) {
                std::vector<letter_t> g = f;
                g.push_back(c);
                StateSet& target = next_layer[g];
                target.insert(target.end(), succ.begin(), succ.end());
            }
        }
        for (auto& [g, s] : next_layer) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            expand_hub(s);
        }
        layer = std::move(next_layer);
    }
    return FactorTable(a0, total_text, max_len, std::move(by_length));
}

struct GrowthCheckReport {
    bool growing = false;
    std::size_t depth = 0;
    std::vector<mpz_class> beta_minus;  // beta_0^- .. beta_depth^-
    std::size_t stall_window = 0;
};

/*
 * beta_n^- profile up to the requested depth.  The verdict is window-honest:
 * "growing" means the minimal image length still increased within the last
 * stall_window steps, which rules out chains that freeze a letter (identity
 * tails, the Cassaigne extra letter) without claiming anything at infinity.
 */
inline GrowthCheckReport everywhere_growing_check(const DirectiveSequence& ds, std::size_t depth,
                                                  std::size_t stall_window = 64) {
    GrowthCheckReport rep;
    rep.stall_window = stall_window;
    if (auto len = ds.max_product_depth()) depth = std::min(depth, *len);
    rep.depth = depth;
    for (std::size_t n = 0; n <= depth; ++n) rep.beta_minus.push_back(ds.beta_minus(n));
    std::size_t from = depth > stall_window ? depth - stall_window : 0;
    rep.growing = rep.beta_minus[depth] > rep.beta_minus[from];
    return rep;
}

struct PrimitivityScan {
    struct WeakWitness {
        std::size_t start = 0;
        std::optional<std::size_t> r;  // least r with M_n ... M_{n+r} positive
    };
    std::vector<WeakWitness> weak;            // per scanned start index
    std::optional<std::size_t> strong_r;      // one r working for every scanned start
    std::size_t r_max = 0;
    bool exhausted = false;                   // some start had no witness <= r_max
};

/* positivity witnesses for tails of the chain; exhaustion is "unknown", not "false" */
inline PrimitivityScan primitivity_check(const DirectiveSequence& ds, std::size_t start,
                                         std::size_t r_max, std::size_t scan_len = 8) {
    PrimitivityScan scan;
    scan.r_max = r_max;
    std::size_t strong_needed = 0;
    bool strong_ok = true;
    for (std::size_t n = start; n < start + scan_len; ++n) {
        PrimitivityScan::WeakWitness w;
        w.start = n;
        auto first = ds.substitution(n);
        if (!first) break;
        IntMatrix prod = incidence(*first);
        for (std::size_t r = 0; r <= r_max; ++r) {
            if (r > 0) {
                auto sub = ds.substitution(n + r);
                if (!sub) break;
                prod = prod * incidence(*sub);
            }
            if (prod.positive()) {
                w.r = r;
                break;
            }
        }
        if (!w.r) {
            scan.exhausted = true;
            strong_ok = false;
        } else {
            strong_needed = std::max(strong_needed, *w.r);
        }
        scan.weak.push_back(w);
    }
    if (strong_ok && !scan.weak.empty()) scan.strong_r = strong_needed;
    return scan;
}

struct FrequencyResult {
    std::vector<double> f;            // positive, sums to 1 (once a positive block occurred)
    std::vector<mpq_class> f_exact;   // exact barycenter of the depth-n cone
    std::size_t depth = 0;
    double diameter = 0.0;            // projective diameter of the cone at stop
    bool converged = false;
};

namespace detail {

/* exact barycenter of the normalized columns of a non-negative matrix */
inline std::vector<mpq_class> cone_barycenter(const IntMatrix& a) {
    std::vector<mpq_class> f(a.rows(), 0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        mpz_class s = a.col_sum(j);
        if (s == 0) throw precondition_error("cone barycenter: zero column");
        for (std::size_t i = 0; i < a.rows(); ++i) f[i] += mpq_class(a(i, j), s);
    }
    for (auto& x : f) {
        x /= static_cast<unsigned long>(a.cols());
        x.canonicalize();
    }
    return f;
}

}  // namespace detail

/*
 * Letter frequencies as the generalized right eigenvector: iterate the nested
 * cones A_n R_+^d until their Hilbert-metric diameter drops below tol, then
 * return the normalized barycenter column.  Stops unconverged (with
 * diagnostics) at n_max or at the end of a finite chain.
 */
inline FrequencyResult generalized_eigenvector(const DirectiveSequence& ds, double tol = 1e-10,
                                               std::size_t n_max = 10000) {
    FrequencyResult res;
    std::size_t limit = n_max;
    if (auto len = ds.max_product_depth()) limit = std::min(limit, *len);
    double diam = std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    for (n = 1; n <= limit; ++n) {
        IntMatrix a = ds.product(n);
        diam = projective_diameter(a);
        if (diam < tol) break;
    }
    if (n > limit) n = limit;
    res.depth = n;
    res.diameter = diam;
    res.converged = diam < tol;
    IntMatrix a = ds.product(n);
    res.f_exact = detail::cone_barycenter(a);
    res.f.resize(res.f_exact.size());
    for (std::size_t i = 0; i < res.f.size(); ++i) res.f[i] = res.f_exact[i].get_d();
    return res;
}

struct ConvergenceProfile {
    std::size_t depth = 0;
    std::vector<double> weak;    // d(A_n e_i / ||A_n e_i||_1, f), per letter i
    std::vector<double> strong;  // d(A_n e_i, R f), per letter i
    double diameter = 0.0;       // projective diameter of the cone A_n R_+^d
    double delta = 0.0;          // max_i,j | |w_j|_i/|w_j| - f_i |
};

inline ConvergenceProfile convergence_profile(const DirectiveSequence& ds,
                                              const std::vector<double>& f, std::size_t n) {
    IntMatrix a = ds.product(n);
    if (f.size() != a.rows())
        throw precondition_error("convergence_profile: frequency vector dimension mismatch");
    ConvergenceProfile prof;
    prof.depth = n;
    prof.diameter = projective_diameter(a);

    double fnorm2 = 0.0;
    for (double x : f) fnorm2 += x * x;
    fnorm2 = std::sqrt(fnorm2);

    for (std::size_t j = 0; j < a.cols(); ++j) {
        mpz_class colsum = a.col_sum(j);
        // weak: l1-normalized column vs f
        double weak2 = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            mpq_class ratio(a(i, j), colsum);
            ratio.canonicalize();
            double dev = ratio.get_d() - f[i];
            weak2 += dev * dev;
            prof.delta = std::max(prof.delta, std::abs(dev));
        }
        prof.weak.push_back(std::sqrt(weak2));
        // strong: Euclidean distance from the raw column to the line R f
        double dot = 0.0, norm2 = 0.0;
        std::vector<double> col(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            col[i] = a(i, j).get_d();
            dot += col[i] * f[i] / fnorm2;
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            double perp = col[i] - dot * f[i] / fnorm2;
            norm2 += perp * perp;
        }
        prof.strong.push_back(std::sqrt(norm2));
    }
    return prof;
}

/*
 * Operator norm of the transpose product restricted to the hyperplane f-perp:
 * ||(tA) P||_2 with P the orthogonal projector onto f-perp.  The projection
 * is carried out in exact rational arithmetic (this is where catastrophic
 * cancellation lives: tA stretches by lambda_1^n while the restriction decays
 * like |lambda_2|^n), and only the final well-scaled norm uses doubles.
 */
inline double transpose_norm_orthogonal_to(const IntMatrix& a, const std::vector<mpq_class>& f) {
    std::size_t d = a.rows();
    if (f.size() != d)
        throw precondition_error("transpose_norm_orthogonal_to: dimension mismatch");
    mpq_class ff(0);
    for (const auto& x : f) ff += x * x;
    if (ff == 0) throw precondition_error("transpose_norm_orthogonal_to: zero vector");
    RatMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            mpq_class v = (i == j ? mpq_class(1) : mpq_class(0)) - f[i] * f[j] / ff;
            v.canonicalize();
            p(i, j) = v;
        }
    RatMatrix ta(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) ta(i, j) = mpq_class(a(j, i));
    RatMatrix restricted = ta * p;
    return spectral_norm(restricted);
}

struct BalanceCriterionReport {
    std::size_t n_terms = 0;
    std::vector<double> terms;         // ||(tA_n)|_{f-perp}|| * ||M_n||
    std::vector<double> partial_sums;
    std::vector<double> ratios;        // successive term ratios
    double tail_ratio = 0.0;           // geometric-tail estimate from the last terms
    bool decaying = false;
    std::string verdict;
    std::size_t f_depth = 0;           // cone depth used for the frequency vector
};

/*
 * Partial sums of the balancedness criterion.  The frequency vector must be
 * far more accurate than the smallest term, since an error delta in f leaks
 * a spurious contribution ~ delta * ||A_n||; when no vector is supplied the
 * cone barycenter at depth 2N + 16 is used, whose projective error is far
 * below the surviving terms whenever the cone contracts at all.
 */
inline BalanceCriterionReport balance_criterion_partial_sums(
    const DirectiveSequence& ds, std::size_t n_terms,
    std::optional<std::vector<mpq_class>> f = std::nullopt) {
    BalanceCriterionReport rep;
    rep.n_terms = n_terms;
    if (n_terms == 0) throw precondition_error("balance criterion: need at least one term");

    std::size_t f_depth = 2 * n_terms + 16;
    if (auto len = ds.max_product_depth()) {
        if (*len < n_terms)
            throw precondition_error("balance criterion: chain shorter than requested terms");
        f_depth = std::min(f_depth, *len);
    }
    std::vector<mpq_class> fvec;
    if (f) {
        fvec = *f;
        rep.f_depth = 0;
    } else {
        if (f_depth < 2 * n_terms)
            throw precondition_error(
                "balance criterion: finite chain too short to pin the frequency vector; "
                "supply f explicitly or request fewer terms");
        fvec = detail::cone_barycenter(ds.product(f_depth));
        rep.f_depth = f_depth;
    }

    double sum = 0.0;
    for (std::size_t n = 0; n < n_terms; ++n) {
        auto sub = ds.substitution(n);
        if (!sub) throw precondition_error("balance criterion: chain ends before term " +
                                           std::to_string(n));
        IntMatrix a = ds.product(n);
        double restricted = transpose_norm_orthogonal_to(a, fvec);
        double mn = spectral_norm(to_real(incidence(*sub)));
        double t = restricted * mn;
        rep.terms.push_back(t);
        sum += t;
        rep.partial_sums.push_back(sum);
        if (n > 0 && rep.terms[n - 1] > 0.0) rep.ratios.push_back(t / rep.terms[n - 1]);
    }
    if (!rep.ratios.empty()) {
        std::size_t tail = std::min<std::size_t>(5, rep.ratios.size());
        double acc = 0.0;
        for (std::size_t i = rep.ratios.size() - tail; i < rep.ratios.size(); ++i)
            acc += rep.ratios[i];
        rep.tail_ratio = acc / static_cast<double>(tail);
        rep.decaying = rep.tail_ratio < 0.98 && rep.terms.back() < rep.terms.front();
    }
    rep.verdict = rep.decaying
                      ? "criterion satisfied up to " + std::to_string(n_terms) +
                            " terms with decaying terms (tail ratio " +
                            std::to_string(rep.tail_ratio) + ")"
                      : "no decay observed up to " + std::to_string(n_terms) + " terms";
    return rep;
}

struct EntropyBound {
    double bound = 0.0;
    std::size_t argmin_depth = 0;
    std::vector<double> per_depth;  // log(Card A_n) / beta_n^-
};

/* h_X <= min_{n <= depth} log(Card A_n) / beta_n^-, exact beta */
inline EntropyBound entropy_upper_bound(const DirectiveSequence& ds, std::size_t depth) {
    EntropyBound eb;
    if (auto len = ds.max_product_depth()) depth = std::min(depth, *len);
    for (std::size_t n = 0; n <= depth; ++n) {
        IntMatrix a = ds.product(n);
        double dn = static_cast<double>(a.cols());
        // log d / beta with exact beta, in logs so huge beta survives
        double val = std::log(dn) * std::exp(-log_mpz(ds.beta_minus(n)));
        eb.per_depth.push_back(val);
        if (n == 0 || val < eb.bound) {
            eb.bound = val;
            eb.argmin_depth = n;
        }
    }
    return eb;
}

/*
 * Finite-window complexity bound: counting concatenations of depth-n images
 * gives p(N) <= (Card A_n)^(N/beta_n^- + 2) * beta_n^+, i.e.
 *   log p(N)/N <= (1/beta_n^- + 2/N) log Card A_n + log beta_n^+ / N
 * for every n.  This is the depth-matched bound a length-N measurement can
 * actually be compared against; it tends to the asymptotic bound as N grows.
 */
inline EntropyBound finite_window_complexity_bound(const DirectiveSequence& ds, std::size_t N,
                                                   std::size_t depth) {
    if (N == 0) throw precondition_error("finite_window_complexity_bound: N must be positive");
    EntropyBound eb;
    if (auto len = ds.max_product_depth()) depth = std::min(depth, *len);
    double dN = static_cast<double>(N);
    for (std::size_t n = 0; n <= depth; ++n) {
        IntMatrix a = ds.product(n);
        double dn = static_cast<double>(a.cols());
        double bm = std::exp(log_mpz(ds.beta_minus(n)));
        double bp_log = log_mpz(ds.beta_plus(n));
        double val = (1.0 / bm + 2.0 / dN) * std::log(dn) + bp_log / dN;
        eb.per_depth.push_back(val);
        if (n == 0 || val < eb.bound) {
            eb.bound = val;
            eb.argmin_depth = n;
        }
    }
    return eb;
}

/*
 * Cassaigne expansion of a finite word: over the alphabet extended by a fresh
 * letter '#', sigma_0 sends # to w_0 and every later sigma_n sends # to
 * # w_n, all other letters being fixed.  The limit word of the resulting
 * chain reproduces w exactly, and the chain is not everywhere growing (the
 * letters of the original alphabet never grow).
 */
inline DirectiveSequence cassaigne_expansion(const FiniteWord& w) {
    if (w.empty())
        throw precondition_error("cassaigne_expansion: word must be non-empty");
    std::vector<std::string> letters = w.alphabet().letters();
    for (const auto& l : letters)
        if (l == "#")
            throw precondition_error("cassaigne_expansion: alphabet already contains '#'");
    letters.push_back("#");
    Alphabet ext = Alphabet::from_letters(letters);
    letter_t hash = static_cast<letter_t>(ext.size() - 1);

    auto fix_all = [&](letter_t special, std::vector<letter_t> image, std::string name) {
        std::vector<FiniteWord> images;
        for (letter_t c = 0; c < ext.size(); ++c) {
            if (c == special)
                images.push_back(FiniteWord(ext, image));
            else
                images.push_back(FiniteWord(ext, {c}));
        }
        return Substitution(ext, ext, std::move(images), std::move(name));
    };

    std::vector<Substitution> chain;
    chain.push_back(fix_all(hash, {w[0]}, "seed"));
    for (std::size_t n = 1; n < w.size(); ++n)
        chain.push_back(fix_all(hash, {hash, w[n]}, "push_" + ext.letter(w[n])));

    std::vector<letter_t> seeds(chain.size() + 1, hash);
    seeds[0] = w[0];
    return DirectiveSequence::explicit_finite(std::move(chain), std::move(seeds));
}

}  // namespace sadic
