/*
 * factors.hpp
 *
 * Factor collection and the complexity function, computed on an explicit
 * finite window of a word.  A suffix automaton of the window gives every
 * distinct factor exactly once (each automaton state covers a contiguous
 * range of lengths and remembers a first occurrence), so building the
 * per-length factor sets costs O(window + output) instead of a quadratic
 * sliding-window scan.
 *
 * All quantities are window-relative by contract: the table records which
 * prefix length was used and nothing is extrapolated.
 */

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sadic/core.hpp"

namespace sadic {

class SuffixAutomaton {
public:
    struct State {
        int len = 0;
        int link = -1;
        int firstpos = 0;  // end position (exclusive) of the first occurrence
        std::map<letter_t, int> next;
    };

    explicit SuffixAutomaton(const std::vector<letter_t>& text) : text_(text) {
        states_.reserve(2 * text.size() + 2);
        states_.push_back(State{});
        int last = 0;
        for (letter_t c : text) {
            int cur = static_cast<int>(states_.size());
            states_.push_back(State{});
            states_[cur].len = states_[last].len + 1;
            states_[cur].firstpos = states_[cur].len;
            int p = last;
            while (p != -1 && !states_[p].next.count(c)) {
                states_[p].next[c] = cur;
                p = states_[p].link;
            }
            if (p == -1) {
                states_[cur].link = 0;
            } else {
                int q = states_[p].next[c];
                if (states_[p].len + 1 == states_[q].len) {
                    states_[cur].link = q;
                } else {
                    int clone = static_cast<int>(states_.size());
                    states_.push_back(states_[q]);
                    states_[clone].len = states_[p].len + 1;
                    while (p != -1 && states_[p].next[c] == q) {
                        states_[p].next[c] = clone;
                        p = states_[p].link;
                    }
                    states_[q].link = clone;
                    states_[cur].link = clone;
                }
            }
            last = cur;
        }
    }

    const std::vector<State>& states() const { return states_; }
    const std::vector<letter_t>& text() const { return text_; }

    /* p(n) for 1 <= n <= max_n via a difference array over length ranges */
    std::vector<std::size_t> distinct_factor_counts(std::size_t max_n) const {
        std::vector<long long> diff(max_n + 2, 0);
        for (std::size_t v = 1; v < states_.size(); ++v) {
            std::size_t lo = static_cast<std::size_t>(states_[states_[v].link].len) + 1;
            std::size_t hi = static_cast<std::size_t>(states_[v].len);
            if (lo > max_n) continue;
            if (hi > max_n) hi = max_n;
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
        std::vector<std::size_t> counts(max_n + 1, 0);
        long long run = 0;
        for (std::size_t n = 1; n <= max_n; ++n) {
            run += diff[n];
            counts[n] = static_cast<std::size_t>(run);
        }
        return counts;
    }

private:
    std::vector<letter_t> text_;
    std::vector<State> states_;
};

class FactorTable {
public:
    FactorTable(Alphabet alphabet, std::size_t window, std::size_t max_n,
                std::vector<std::vector<FiniteWord>> by_length)
        : alphabet_(std::move(alphabet)), window_(window), max_n_(max_n),
          by_length_(std::move(by_length)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t window() const { return window_; }
    std::size_t max_length() const { return max_n_; }

    std::size_t p(std::size_t n) const {
        if (n == 0 || n > max_n_)
            throw precondition_error("factor table: length " + std::to_string(n) +
                                     " outside table range 1.." + std::to_string(max_n_));
        return by_length_[n - 1].size();
    }

    /* sorted lexicographically by letter index */
    const std::vector<FiniteWord>& factors_of(std::size_t n) const {
        if (n == 0 || n > max_n_)
            throw precondition_error("factor table: length out of range");
        return by_length_[n - 1];
    }

    bool contains(const FiniteWord& w) const {
        if (w.empty() || w.size() > max_n_) return false;
        const auto& set = by_length_[w.size() - 1];
        return std::binary_search(set.begin(), set.end(), w);
    }

    std::vector<std::size_t> complexity() const {
        std::vector<std::size_t> p(max_n_);
        for (std::size_t n = 1; n <= max_n_; ++n) p[n - 1] = by_length_[n - 1].size();
        return p;
    }

    std::vector<long long> first_differences() const {
        auto p = complexity();
        std::vector<long long> d;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            d.push_back(static_cast<long long>(p[i + 1]) - static_cast<long long>(p[i]));
        return d;
    }

private:
    Alphabet alphabet_;
    std::size_t window_;
    std::size_t max_n_;
    std::vector<std::vector<FiniteWord>> by_length_;
};

inline FactorTable factor_table_of_window(const Alphabet& alphabet,
                                          const std::vector<letter_t>& window,
                                          std::size_t max_n) {
    SuffixAutomaton sam(window);
    std::vector<std::vector<FiniteWord>> by_length(max_n);
    const auto& st = sam.states();
    for (std::size_t v = 1; v < st.size(); ++v) {
        std::size_t lo = static_cast<std::size_t>(st[st[v].link].len) + 1;
        std::size_t hi = static_cast<std::size_t>(st[v].len);
        if (hi > max_n) hi = max_n;
        for (std::size_t n = lo; n <= hi; ++n) {
            std::size_t end = static_cast<std::size_t>(st[v].firstpos);
            std::vector<letter_t> w(window.begin() + (end - n), window.begin() + end);
            by_length[n - 1].push_back(FiniteWord(alphabet, std::move(w)));
        }
    }
    for (auto& set : by_length) std::sort(set.begin(), set.end());
    return FactorTable(alphabet, window.size(), max_n, std::move(by_length));
}

/* All distinct length-n windows of prefix(prefix_len), for n = 1..max_n. */
inline FactorTable factors(const WordStream& stream, std::size_t prefix_len, std::size_t max_n) {
    if (max_n < 1 || prefix_len < max_n)
        throw precondition_error("factors: need prefix_len >= max_n >= 1");
    std::vector<letter_t> window = stream.prefix_letters(prefix_len);
    return factor_table_of_window(stream.alphabet(), window, max_n);
}

/* counts only; used by the stabilization scan where factor sets are not needed */
inline std::vector<std::size_t> complexity_counts(const WordStream& stream,
                                                  std::size_t prefix_len, std::size_t max_n) {
    if (max_n < 1 || prefix_len < max_n)
        throw precondition_error("complexity: need prefix_len >= max_n >= 1");
    SuffixAutomaton sam(stream.prefix_letters(prefix_len));
    auto counts = sam.distinct_factor_counts(max_n);
    return std::vector<std::size_t>(counts.begin() + 1, counts.end());
}

struct ComplexityReport {
    std::vector<std::size_t> p;      // p(1..max_n)
    std::vector<long long> dp;       // p(n+1) - p(n)
    std::size_t window = 0;
};

inline ComplexityReport complexity(const FactorTable& table) {
    return ComplexityReport{table.complexity(), table.first_differences(), table.window()};
}

/*
 * Largest n at which p(n) agrees across window, window/2 and window/4; a
 * practical signal that the reported complexity is not a truncation artifact.
 */
inline std::size_t stable_complexity_depth(const WordStream& stream, std::size_t prefix_len,
                                           std::size_t max_n) {
    if (prefix_len / 4 < max_n)
        throw precondition_error("stable_complexity_depth: need prefix_len >= 4*max_n");
    auto full = complexity_counts(stream, prefix_len, max_n);
    auto half = complexity_counts(stream, prefix_len / 2, max_n);
    auto quarter = complexity_counts(stream, prefix_len / 4, max_n);
    std::size_t stable = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        if (full[n - 1] == half[n - 1] && half[n - 1] == quarter[n - 1])
            stable = n;
        else
            break;
    }
    return stable;
}

struct EntropyEstimate {
    double at_max = 0.0;             // log p(N) / N at the largest N
    std::vector<double> per_n;       // log p(n) / n, an upper-trend envelope
};

/* Upper-trend estimate of the exponential growth rate of p. */
inline EntropyEstimate entropy_estimate(const std::vector<std::size_t>& p) {
    if (p.empty()) throw precondition_error("entropy_estimate: empty complexity sequence");
    EntropyEstimate e;
    e.per_n.reserve(p.size());
    for (std::size_t n = 1; n <= p.size(); ++n)
        e.per_n.push_back(std::log(static_cast<double>(p[n - 1])) / static_cast<double>(n));
    e.at_max = e.per_n.back();
    return e;
}

}  // namespace sadic
