/*
 * recurrence.hpp
 *
 * Window-relative recurrence function, return words and derived words.
 *
 * R(n) is the smallest k such that every length-k window of the prefix
 * contains every length-n factor seen in the prefix.  A value is reported as
 * undetermined when some length-n factor occurs only once in the window: the
 * window then carries no evidence of recurrence and the computed value would
 * be a truncation artifact.
 */

#pragma once

#include <optional>
#include <vector>

#include "sadic/core.hpp"
#include "sadic/factors.hpp"
#include "sadic/substitution.hpp"

namespace sadic {

struct RecurrenceReport {
    std::vector<std::optional<std::size_t>> R;  // R(1..max_n); nullopt = undetermined
    std::size_t window = 0;
};

inline RecurrenceReport recurrence_function(const WordStream& stream, std::size_t prefix_len,
                                            std::size_t max_n) {
    if (max_n < 1 || prefix_len < max_n)
        throw precondition_error("recurrence: need prefix_len >= max_n >= 1");
    std::vector<letter_t> text = stream.prefix_letters(prefix_len);
    SuffixAutomaton sam(text);
    const auto& st = sam.states();
    std::size_t N = text.size();

    RecurrenceReport report;
    report.window = N;
    report.R.resize(max_n);

    // per-state scratch, reused across n
    std::vector<long long> first_occ(st.size()), last_occ(st.size()), max_gap(st.size());

    for (std::size_t n = 1; n <= max_n; ++n) {
        std::fill(first_occ.begin(), first_occ.end(), -1);
        std::fill(last_occ.begin(), last_occ.end(), -1);
        std::fill(max_gap.begin(), max_gap.end(), 0);

        // slide a length-n window, identifying its automaton state online
        int cur = 0;
        std::size_t curlen = 0;
        std::vector<int> seen_states;
        for (std::size_t i = 0; i < N; ++i) {
            letter_t c = text[i];
            while (cur != 0 && !st[cur].next.count(c)) {
                cur = st[cur].link;
                curlen = static_cast<std::size_t>(st[cur].len);
            }
            auto it = st[cur].next.find(c);
            if (it != st[cur].next.end()) {
                cur = it->second;
                curlen = std::min(curlen + 1, static_cast<std::size_t>(st[cur].len));
            } else {
                cur = 0;
                curlen = 0;
            }
            if (curlen < n) continue;
            int state = cur;
            while (st[st[state].link].len >= static_cast<int>(n)) state = st[state].link;
            long long start = static_cast<long long>(i) - static_cast<long long>(n) + 1;
            if (first_occ[state] < 0) {
                first_occ[state] = start;
                seen_states.push_back(state);
            } else {
                long long gap = start - last_occ[state];
                if (gap > max_gap[state]) max_gap[state] = gap;
            }
            last_occ[state] = start;
        }

        bool undetermined = false;
        std::size_t needed = n;
        for (int s : seen_states) {
            if (max_gap[s] == 0) {  // single occurrence, no recurrence evidence
                undetermined = true;
                break;
            }
            std::size_t k1 = static_cast<std::size_t>(first_occ[s]) + n;
            std::size_t k2 = N - static_cast<std::size_t>(last_occ[s]);
            std::size_t k3 = static_cast<std::size_t>(max_gap[s]) + n - 1;
            needed = std::max({needed, k1, k2, k3});
        }
        report.R[n - 1] = undetermined ? std::nullopt : std::optional<std::size_t>(needed);
    }
    return report;
}

inline std::vector<std::size_t> occurrences(const std::vector<letter_t>& text,
                                            const std::vector<letter_t>& pattern) {
    std::vector<std::size_t> occ;
    if (pattern.empty() || pattern.size() > text.size()) return occ;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
        if (std::equal(pattern.begin(), pattern.end(), text.begin() + i)) occ.push_back(i);
    }
    return occ;
}

/*
 * Words v starting with w such that vw lies in the window and contains exactly
 * two occurrences of w; equivalently the pieces between consecutive
 * occurrences (overlaps allowed).  Sorted lexicographically, duplicates
 * removed.
 */
inline std::vector<FiniteWord> return_words(const WordStream& stream, std::size_t prefix_len,
                                            const FiniteWord& w) {
    if (w.alphabet() != stream.alphabet())
        throw alphabet_mismatch("return_words: factor is not over the stream alphabet");
    if (w.empty()) throw precondition_error("return_words: factor must be non-empty");
    std::vector<letter_t> text = stream.prefix_letters(prefix_len);
    auto occ = occurrences(text, w.letters());
    if (occ.size() < 2)
        throw precondition_error("return_words: insufficient occurrences of '" + w.str() +
                                 "' in the window (" + std::to_string(occ.size()) + " found)");
    std::vector<FiniteWord> out;
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
        std::vector<letter_t> piece(text.begin() + occ[i], text.begin() + occ[i + 1]);
        out.push_back(FiniteWord(stream.alphabet(), std::move(piece)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct DerivedWord {
    WordStream derived;        // recoding over the return-word alphabet "1".."d1"
    Substitution coding;       // i -> i-th return word (by first appearance)
    std::size_t start_offset;  // position of the first occurrence of w
};

/*
 * Recode the window over the return words of w.  Return words are numbered by
 * first appearance, so applying the coding substitution to the derived word
 * reproduces the window between the first and last occurrence of w exactly.
 */
inline DerivedWord derived_word(const WordStream& stream, std::size_t prefix_len,
                                const FiniteWord& w) {
    if (w.alphabet() != stream.alphabet())
        throw alphabet_mismatch("derived_word: factor is not over the stream alphabet");
    if (w.empty()) throw precondition_error("derived_word: factor must be non-empty");
    std::vector<letter_t> text = stream.prefix_letters(prefix_len);
    auto occ = occurrences(text, w.letters());
    if (occ.size() < 2)
        throw precondition_error("derived_word: factor '" + w.str() +
                                 "' does not recur in the window");

    std::vector<std::vector<letter_t>> return_pieces;
    std::vector<letter_t> codes;
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
        std::vector<letter_t> piece(text.begin() + occ[i], text.begin() + occ[i + 1]);
        letter_t code = 0;
        bool found = false;
        for (std::size_t j = 0; j < return_pieces.size(); ++j) {
            if (return_pieces[j] == piece) {
                code = static_cast<letter_t>(j);
                found = true;
                break;
            }
        }
        if (!found) {
            code = static_cast<letter_t>(return_pieces.size());
            return_pieces.push_back(std::move(piece));
        }
        codes.push_back(code);
    }

    Alphabet derived_alpha = Alphabet::numeric(return_pieces.size());
    std::vector<FiniteWord> images;
    images.reserve(return_pieces.size());
    for (auto& piece : return_pieces)
        images.push_back(FiniteWord(stream.alphabet(), piece));
    Substitution coding(derived_alpha, stream.alphabet(), std::move(images), "return-coding");
    WordStream derived =
        WordStream::from_word(FiniteWord(derived_alpha, std::move(codes)), "derived word");
    return DerivedWord{std::move(derived), std::move(coding), occ.front()};
}

}  // namespace sadic
