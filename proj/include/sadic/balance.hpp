/*
 * balance.hpp
 *
 * Balance and discrepancy of a word on a finite window.
 *
 *   B = max over letters i and lengths n <= max_n of
 *       max_v |v|_i - min_v |v|_i over the length-n windows v,
 *   D = max over letters i and prefix lengths n <= window of
 *       | |u_0..u_{n-1}|_i - n f_i |.
 *
 * With the exact frequency vector these satisfy D <= B and B <= 4 D (when the
 * window is long enough to witness both), and a bound B <= C forces every
 * window factor to satisfy | |w|_i - f_i |w| | <= 2C.  The frequency vector
 * defaults to the empirical prefix counts.
 */

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sadic/core.hpp"

namespace sadic {

struct BalanceReport {
    std::size_t window = 0;
    std::size_t max_n = 0;
    std::vector<long long> imbalance_by_letter;  // max over n of (max - min) window count
    long long imbalance = 0;                     // B on the window
    std::vector<double> frequencies;             // f used for the discrepancy
    bool empirical_frequencies = true;
    std::vector<double> discrepancy_by_letter;
    double discrepancy = 0.0;                    // D on the window
};

inline BalanceReport balance(const WordStream& stream, std::size_t prefix_len, std::size_t max_n,
                             std::optional<std::vector<double>> frequencies = std::nullopt) {
    if (max_n < 1 || prefix_len < max_n)
        throw precondition_error("balance: need prefix_len >= max_n >= 1");
    std::vector<letter_t> text = stream.prefix_letters(prefix_len);
    std::size_t d = stream.alphabet().size();
    std::size_t N = text.size();

    BalanceReport rep;
    rep.window = N;
    rep.max_n = max_n;

    std::vector<double> f;
    if (frequencies) {
        f = *frequencies;
        if (f.size() != d)
            throw precondition_error("balance: frequency vector has wrong dimension");
        double sum = 0.0;
        for (double x : f) sum += x;
        if (std::abs(sum - 1.0) > 1e-9)
            throw precondition_error("balance: frequency vector must sum to 1");
        rep.empirical_frequencies = false;
    } else {
        std::vector<std::size_t> counts(d, 0);
        for (letter_t c : text) ++counts[c];
        f.resize(d);
        for (std::size_t i = 0; i < d; ++i)
            f[i] = static_cast<double>(counts[i]) / static_cast<double>(N);
    }
    rep.frequencies = f;

    // imbalance: one sliding pass per window length, per-letter running extrema
    rep.imbalance_by_letter.assign(d, 0);
    std::vector<long long> count(d), lo(d), hi(d);
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::fill(count.begin(), count.end(), 0);
        for (std::size_t i = 0; i < n; ++i) ++count[text[i]];
        lo = count;
        hi = count;
        for (std::size_t i = n; i < N; ++i) {
            letter_t in = text[i], out = text[i - n];
            if (in == out) continue;
            ++count[in];
            --count[out];
            if (count[in] > hi[in]) hi[in] = count[in];
            if (count[out] < lo[out]) lo[out] = count[out];
        }
        for (std::size_t i = 0; i < d; ++i) {
            long long spread = hi[i] - lo[i];
            if (spread > rep.imbalance_by_letter[i]) rep.imbalance_by_letter[i] = spread;
        }
    }
    for (long long s : rep.imbalance_by_letter) rep.imbalance = std::max(rep.imbalance, s);

    // discrepancy along prefixes
    rep.discrepancy_by_letter.assign(d, 0.0);
    std::vector<long long> run(d, 0);
    for (std::size_t n = 1; n <= N; ++n) {
        ++run[text[n - 1]];
        for (std::size_t i = 0; i < d; ++i) {
            double dev = std::abs(static_cast<double>(run[i]) -
                                  static_cast<double>(n) * f[i]);
            if (dev > rep.discrepancy_by_letter[i]) rep.discrepancy_by_letter[i] = dev;
        }
    }
    for (double x : rep.discrepancy_by_letter) rep.discrepancy = std::max(rep.discrepancy, x);
    return rep;
}

}  // namespace sadic
