/*
 * directive.hpp
 *
 * Directive sequences: a (possibly infinite) chain of substitutions
 * sigma_n : A_{n+1}* -> A_n* together with seed letters a_n in A_n.  The
 * chain is exposed through a pure provider, with the incidence-matrix
 * products A_n = M_0 M_1 ... M_{n-1} memoized behind a mutex (exact integer
 * arithmetic throughout).
 *
 * Seeds are either supplied explicitly or derived mechanically: walking
 * backwards, s_n = first letter of sigma_n(s_{n+1}) always satisfies the
 * prefix-compatibility contract sigma_n(a_{n+1}) = a_n ..., and for periodic
 * chains the backward map over one period always admits a periodic point, so
 * compatible seeds exist for every finite or periodic chain.
 */

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sadic/matrix.hpp"
#include "sadic/substitution.hpp"

namespace sadic {

class DirectiveSequence {
public:
    enum class Kind { periodic, eventually_periodic, explicit_finite, functional };

    DirectiveSequence() = default;

    static DirectiveSequence periodic(std::vector<Substitution> cycle,
                                      std::optional<std::vector<letter_t>> seeds = std::nullopt) {
        if (cycle.empty()) throw precondition_error("directive sequence: empty cycle");
        validate_chain(cycle, /*cyclic=*/true);
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::periodic;
        impl->kind_label = "periodic";
        std::size_t k = cycle.size();
        impl->period = k;
        impl->subs = [cycle, k](std::size_t n) -> std::optional<Substitution> {
            return cycle[n % k];
        };
        std::vector<letter_t> s = seeds ? *seeds : periodic_backward_seeds(cycle);
        if (s.empty()) throw precondition_error("directive sequence: empty seed list");
        impl->seed_period = s.size();
        impl->seeds = [s](std::size_t n) -> std::optional<letter_t> { return s[n % s.size()]; };
        return DirectiveSequence(std::move(impl));
    }

    static DirectiveSequence eventually_periodic(
        std::vector<Substitution> pre, std::vector<Substitution> cycle,
        std::optional<std::vector<letter_t>> seeds = std::nullopt) {
        if (cycle.empty()) throw precondition_error("directive sequence: empty cycle");
        std::vector<Substitution> joined = pre;
        joined.insert(joined.end(), cycle.begin(), cycle.end());
        validate_chain(joined, /*cyclic=*/false);
        validate_chain(cycle, /*cyclic=*/true);
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::eventually_periodic;
        impl->kind_label = "eventually-periodic";
        std::size_t p = pre.size(), k = cycle.size();
        impl->pre_len = p;
        impl->period = k;
        impl->subs = [pre, cycle, p, k](std::size_t n) -> std::optional<Substitution> {
            return n < p ? pre[n] : cycle[(n - p) % k];
        };
        std::vector<letter_t> head;  // seeds a_0 .. a_{p-1}
        std::vector<letter_t> tail;  // cyclic seeds from position p onwards
        if (seeds) {
            // user seeds: first p entries literal, the rest cycled
            if (seeds->size() <= p)
                throw precondition_error("directive sequence: need seeds beyond the pre part");
            head.assign(seeds->begin(), seeds->begin() + p);
            tail.assign(seeds->begin() + p, seeds->end());
        } else {
            tail = periodic_backward_seeds(cycle);
            head.resize(p);
            letter_t s = tail[0];
            for (std::size_t n = p; n-- > 0;) {
                s = pre[n].image(s)[0];
                head[n] = s;
            }
        }
        impl->seed_period = tail.size();
        impl->seeds = [p, head, tail](std::size_t n) -> std::optional<letter_t> {
            if (n < p) return head[n];
            return tail[(n - p) % tail.size()];
        };
        return DirectiveSequence(std::move(impl));
    }

    static DirectiveSequence explicit_finite(
        std::vector<Substitution> chain,
        std::optional<std::vector<letter_t>> seeds = std::nullopt,
        std::string kind_label = "explicit") {
        if (chain.empty()) throw precondition_error("directive sequence: empty chain");
        validate_chain(chain, /*cyclic=*/false);
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::explicit_finite;
        impl->kind_label = std::move(kind_label);
        impl->length = chain.size();
        std::size_t L = chain.size();
        impl->subs = [chain, L](std::size_t n) -> std::optional<Substitution> {
            if (n >= L) return std::nullopt;
            return chain[n];
        };
        std::vector<letter_t> s;
        if (seeds) {
            s = *seeds;
        } else {
            s.assign(L + 1, 0);
            for (std::size_t n = L; n-- > 0;) s[n] = chain[n].image(s[n + 1])[0];
        }
        impl->seeds = [s](std::size_t n) -> std::optional<letter_t> {
            if (n >= s.size()) return std::nullopt;
            return s[n];
        };
        return DirectiveSequence(std::move(impl));
    }

    /* language-only explicit chain (no seeds; limit words refused) */
    static DirectiveSequence explicit_finite_language_only(std::vector<Substitution> chain) {
        DirectiveSequence ds = explicit_finite(std::move(chain));
        ds.impl_->seeds = [](std::size_t) -> std::optional<letter_t> { return std::nullopt; };
        ds.impl_->has_seeds = false;
        return ds;
    }

    static DirectiveSequence functional(
        std::function<std::optional<Substitution>(std::size_t)> subs,
        std::function<std::optional<letter_t>(std::size_t)> seeds, std::string kind_label,
        std::optional<std::size_t> length = std::nullopt) {
        auto impl = std::make_shared<Impl>();
        impl->kind = Kind::functional;
        impl->kind_label = std::move(kind_label);
        impl->subs = std::move(subs);
        if (seeds) {
            impl->seeds = std::move(seeds);
        } else {
            impl->seeds = [](std::size_t) -> std::optional<letter_t> { return std::nullopt; };
            impl->has_seeds = false;
        }
        impl->length = length;
        return DirectiveSequence(std::move(impl));
    }

    bool valid() const { return impl_ != nullptr; }
    Kind kind() const { return impl_->kind; }
    const std::string& kind_label() const { return impl_->kind_label; }
    std::optional<std::size_t> length() const { return impl_->length; }
    bool has_seeds() const { return impl_->has_seeds; }
    std::size_t period() const { return impl_->period; }           // periodic kinds
    std::size_t pre_length() const { return impl_->pre_len; }      // eventually periodic
    std::size_t seed_period() const { return impl_->seed_period; }

    /* sigma_n, memoized so functional providers are consulted once per index */
    std::optional<Substitution> substitution(std::size_t n) const {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        return substitution_locked(n);
    }

    std::optional<letter_t> seed(std::size_t n) const { return impl_->seeds(n); }

    /* A_n = A_0's alphabet when n = 0, else the domain of sigma_{n-1} */
    Alphabet alphabet_at(std::size_t n) const {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        if (n == 0) {
            auto s0 = substitution_locked(0);
            if (!s0) throw precondition_error("directive sequence: no substitutions");
            return s0->codomain();
        }
        auto s = substitution_locked(n - 1);
        if (!s)
            throw precondition_error("directive sequence: index " + std::to_string(n) +
                                     " beyond the end of the chain");
        return s->domain();
    }

    /* exact product M_0 M_1 ... M_{n-1}; product(0) is the identity on A_0 */
    IntMatrix product(std::size_t n) const {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        if (impl_->products.empty()) {
            auto s0 = substitution_locked(0);
            if (!s0) throw precondition_error("directive sequence: no substitutions");
            impl_->products.push_back(IntMatrix::identity(s0->codomain().size()));
        }
        while (impl_->products.size() <= n) {
            std::size_t k = impl_->products.size() - 1;
            auto sk = substitution_locked(k);
            if (!sk)
                throw precondition_error("directive sequence: product depth " + std::to_string(n) +
                                         " exceeds chain length " + std::to_string(k));
            if (k > 0) {
                auto prev = substitution_locked(k - 1);
                if (sk->codomain() != prev->domain())
                    throw alphabet_mismatch(
                        "directive sequence: chain breaks between indices " + std::to_string(k - 1) +
                        " and " + std::to_string(k));
            }
            impl_->products.push_back(impl_->products.back() * incidence(*sk));
        }
        return impl_->products[n];
    }

    /* depth at which products stop (finite chains); nullopt when unbounded */
    std::optional<std::size_t> max_product_depth() const {
        if (impl_->length) return *impl_->length;
        return std::nullopt;
    }

    mpz_class beta_minus(std::size_t n) const {
        IntMatrix a = product(n);
        mpz_class best = a.col_sum(0);
        for (std::size_t j = 1; j < a.cols(); ++j) best = std::min(best, a.col_sum(j));
        return best;
    }

    mpz_class beta_plus(std::size_t n) const {
        IntMatrix a = product(n);
        mpz_class best = a.col_sum(0);
        for (std::size_t j = 1; j < a.cols(); ++j) best = std::max(best, a.col_sum(j));
        return best;
    }

private:
    struct Impl {
        Kind kind = Kind::functional;
        std::string kind_label;
        std::function<std::optional<Substitution>(std::size_t)> subs;
        std::function<std::optional<letter_t>(std::size_t)> seeds;
        bool has_seeds = true;
        std::optional<std::size_t> length;
        std::size_t period = 0;
        std::size_t pre_len = 0;
        std::size_t seed_period = 0;
        mutable std::mutex mutex;
        mutable std::vector<IntMatrix> products;
        mutable std::vector<std::optional<Substitution>> sub_cache;
    };

    explicit DirectiveSequence(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    std::optional<Substitution> substitution_locked(std::size_t n) const {
        if (n < impl_->sub_cache.size()) return impl_->sub_cache[n];
        while (impl_->sub_cache.size() <= n)
            impl_->sub_cache.push_back(impl_->subs(impl_->sub_cache.size()));
        return impl_->sub_cache[n];
    }

    static void validate_chain(const std::vector<Substitution>& chain, bool cyclic) {
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (chain[i].domain() != chain[i + 1].codomain())
                throw alphabet_mismatch("directive sequence: chain breaks between indices " +
                                        std::to_string(i) + " and " + std::to_string(i + 1));
        if (cyclic && chain.back().domain() != chain.front().codomain())
            throw alphabet_mismatch("directive sequence: cycle does not close up");
    }

    /*
     * Backward seed construction for a cyclic chain.  The map sending the
     * seed at position k to the induced seed at position 0 acts on a finite
     * set, so iterating it finds a periodic point; the returned seed vector
     * has period (cycle length) x (period of that point).
     */
    static std::vector<letter_t> periodic_backward_seeds(const std::vector<Substitution>& cycle) {
        std::size_t k = cycle.size();
        auto backward_once = [&](letter_t end_seed) {
            letter_t s = end_seed;
            for (std::size_t n = k; n-- > 0;) s = cycle[n].image(s)[0];
            return s;
        };
        // find a periodic point of the backward map
        letter_t x = 0;
        std::vector<int> seen(cycle.front().codomain().size(), -1);
        int step = 0;
        while (seen[x] < 0) {
            seen[x] = step++;
            x = backward_once(x);
        }
        std::size_t cycle_len = static_cast<std::size_t>(step - seen[x]);
        // fill seeds backwards over cycle_len periods, starting and ending at x
        std::size_t total = k * cycle_len;
        std::vector<letter_t> seeds(total + 1);
        seeds[total] = x;
        for (std::size_t n = total; n-- > 0;) seeds[n] = cycle[n % k].image(seeds[n + 1])[0];
        seeds.pop_back();  // seeds[total] == seeds[0] by periodicity
        return seeds;
    }

    std::shared_ptr<Impl> impl_;
};

}  // namespace sadic
