/*
 * graph.hpp
 *
 * Substitution-labeled directed graphs, Markov measures on their edge paths,
 * exact cocycle products and a breadth-first search for positive paths.
 */

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sadic/directive.hpp"
#include "sadic/matrix.hpp"
#include "sadic/substitution.hpp"

namespace sadic {

struct GraphEdge {
    std::string id;
    std::string from;
    std::string to;
    Substitution substitution;
};

class SAdicGraph {
public:
    SAdicGraph(std::string name, std::vector<std::string> vertices, std::vector<GraphEdge> edges)
        : name_(std::move(name)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        if (vertices_.empty()) throw precondition_error("graph: no vertices");
        if (edges_.empty()) throw precondition_error("graph: no edges");
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (!vertex_index_.emplace(vertices_[v], v).second)
                throw precondition_error("graph: duplicate vertex '" + vertices_[v] + "'");
        alphabet_ = edges_.front().substitution.domain();
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const GraphEdge& ed = edges_[e];
            if (!edge_index_.emplace(ed.id, e).second)
                throw precondition_error("graph: duplicate edge id '" + ed.id + "'");
            if (!vertex_index_.count(ed.from) || !vertex_index_.count(ed.to))
                throw precondition_error("graph: edge '" + ed.id + "' references unknown vertex");
            if (ed.substitution.domain() != alphabet_ || ed.substitution.codomain() != alphabet_)
                throw alphabet_mismatch("graph: edge '" + ed.id +
                                        "' substitution uses a different alphabet");
            incidences_.push_back(incidence(ed.substitution));
            out_edges_[vertex_index_[ed.from]].push_back(e);
        }
        strongly_connected_ = compute_strong_connectivity();
    }

    const std::string& name() const { return name_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const IntMatrix& edge_matrix(std::size_t e) const { return incidences_.at(e); }
    bool strongly_connected() const { return strongly_connected_; }

    std::size_t vertex(const std::string& name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end())
            throw precondition_error("graph: unknown vertex '" + name + "'");
        return it->second;
    }

    std::size_t edge(const std::string& id) const {
        auto it = edge_index_.find(id);
        if (it == edge_index_.end())
            throw precondition_error("graph: unknown edge '" + id + "'");
        return it->second;
    }

    const std::vector<std::size_t>& out_edges(std::size_t vertex) const {
        static const std::vector<std::size_t> none;
        auto it = out_edges_.find(vertex);
        return it == out_edges_.end() ? none : it->second;
    }

    std::size_t source(std::size_t e) const { return vertex_index_.at(edges_[e].from); }
    std::size_t range(std::size_t e) const { return vertex_index_.at(edges_[e].to); }

    /* all edge matrices invertible over the rationals */
    bool all_invertible() const {
        for (const auto& m : incidences_)
            if (determinant(m) == 0) return false;
        return true;
    }

private:
    bool compute_strong_connectivity() const {
        auto reachable = [&](bool reverse) {
            std::vector<bool> seen(vertices_.size(), false);
            std::vector<std::size_t> stack{0};
            seen[0] = true;
            while (!stack.empty()) {
                std::size_t v = stack.back();
                stack.pop_back();
                for (std::size_t e = 0; e < edges_.size(); ++e) {
                    std::size_t s = reverse ? range(e) : source(e);
                    std::size_t r = reverse ? source(e) : range(e);
                    if (s == v && !seen[r]) {
                        seen[r] = true;
                        stack.push_back(r);
                    }
                }
            }
            for (bool b : seen)
                if (!b) return false;
            return true;
        };
        return reachable(false) && reachable(true);
    }

    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<GraphEdge> edges_;
    Alphabet alphabet_;
    std::vector<IntMatrix> incidences_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> edge_index_;
    std::map<std::size_t, std::vector<std::size_t>> out_edges_;
    bool strongly_connected_ = false;
};

/*
 * Markov measure on edge paths: an initial distribution over edges and
 * transition probabilities between adjacent edges (r(e) = s(e')).
 */
class PathMeasure {
public:
    PathMeasure(const SAdicGraph& graph, std::vector<double> initial,
                std::vector<std::vector<double>> transitions)
        : initial_(std::move(initial)), transitions_(std::move(transitions)) {
        std::size_t E = graph.edges().size();
        if (initial_.size() != E || transitions_.size() != E)
            throw precondition_error("measure: wrong number of edges");
        double s = 0.0;
        for (double p : initial_) {
            if (p < 0) throw precondition_error("measure: negative probability");
            s += p;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw precondition_error("measure: initial distribution must sum to 1");
        for (std::size_t e = 0; e < E; ++e) {
            if (transitions_[e].size() != E)
                throw precondition_error("measure: transition row has wrong size");
            double rs = 0.0;
            for (std::size_t f = 0; f < E; ++f) {
                double p = transitions_[e][f];
                if (p < 0) throw precondition_error("measure: negative probability");
                if (p > 0 && graph.range(e) != graph.source(f))
                    throw precondition_error("measure: transition " + graph.edges()[e].id +
                                             " -> " + graph.edges()[f].id +
                                             " does not respect adjacency");
                rs += p;
            }
            if (std::abs(rs - 1.0) > 1e-9)
                throw precondition_error("measure: transition row of '" + graph.edges()[e].id +
                                         "' must sum to 1");
        }
    }

    /* uniform start, uniform choice among out-edges at each vertex */
    static PathMeasure uniform(const SAdicGraph& graph) {
        std::size_t E = graph.edges().size();
        std::vector<double> initial(E, 1.0 / static_cast<double>(E));
        std::vector<std::vector<double>> tr(E, std::vector<double>(E, 0.0));
        for (std::size_t e = 0; e < E; ++e) {
            const auto& outs = graph.out_edges(graph.range(e));
            if (outs.empty())
                throw precondition_error("measure: vertex '" +
                                         graph.vertices()[graph.range(e)] +
                                         "' has no outgoing edge");
            for (std::size_t f : outs) tr[e][f] = 1.0 / static_cast<double>(outs.size());
        }
        return PathMeasure(graph, std::move(initial), std::move(tr));
    }

    const std::vector<double>& initial() const { return initial_; }
    const std::vector<std::vector<double>>& transitions() const { return transitions_; }

    /* edges reachable from the initial support are mutually reachable */
    bool irreducible_on_support() const {
        std::size_t E = initial_.size();
        auto reach_from = [&](std::size_t start) {
            std::vector<bool> seen(E, false);
            std::vector<std::size_t> stack{start};
            seen[start] = true;
            while (!stack.empty()) {
                std::size_t e = stack.back();
                stack.pop_back();
                for (std::size_t f = 0; f < E; ++f)
                    if (transitions_[e][f] > 0 && !seen[f]) {
                        seen[f] = true;
                        stack.push_back(f);
                    }
            }
            return seen;
        };
        std::vector<bool> support(E, false);
        for (std::size_t e = 0; e < E; ++e)
            if (initial_[e] > 0) {
                auto r = reach_from(e);
                for (std::size_t f = 0; f < E; ++f) support[f] = support[f] || r[f];
                support[e] = true;
            }
        for (std::size_t e = 0; e < E; ++e) {
            if (!support[e]) continue;
            auto r = reach_from(e);
            for (std::size_t f = 0; f < E; ++f)
                if (support[f] && !r[f]) return false;
        }
        return true;
    }

    /* stationary edge distribution (power iteration on the transition matrix) */
    std::vector<double> stationary(std::size_t iterations = 20000) const {
        std::vector<double> pi = initial_;
        for (std::size_t it = 0; it < iterations; ++it) {
            std::vector<double> next(pi.size(), 0.0);
            for (std::size_t e = 0; e < pi.size(); ++e)
                for (std::size_t f = 0; f < pi.size(); ++f)
                    next[f] += pi[e] * transitions_[e][f];
            double diff = 0.0;
            for (std::size_t e = 0; e < pi.size(); ++e) diff += std::abs(next[e] - pi[e]);
            pi = std::move(next);
            if (diff < 1e-14) break;
        }
        return pi;
    }

private:
    std::vector<double> initial_;
    std::vector<std::vector<double>> transitions_;
};

/* exact product of edge incidence matrices along a path */
inline IntMatrix cocycle_product(const SAdicGraph& graph, const std::vector<std::size_t>& path) {
    IntMatrix prod = IntMatrix::identity(graph.alphabet().size());
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (path[k] >= graph.edges().size())
            throw precondition_error("cocycle: unknown edge index at position " +
                                     std::to_string(k));
        if (k > 0 && graph.range(path[k - 1]) != graph.source(path[k]))
            throw precondition_error("cocycle: path is not edge-consistent at index " +
                                     std::to_string(k));
        prod = prod * graph.edge_matrix(path[k]);
    }
    return prod;
}

/*
 * splitmix64: tiny deterministic generator used for all sampling.  Fixed
 * algorithm (not the standard library's unspecified distributions), so runs
 * are reproducible bit for bit across platforms.
 */
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /* uniform in [0, 1) with 53 bits */
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /* uniform integer in [0, n) */
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

/* inverse-CDF sample from a probability vector */
inline std::size_t sample_index(SplitMix64& rng, const std::vector<double>& probs) {
    double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    // numerical slack: fall back to the last positive entry
    for (std::size_t i = probs.size(); i-- > 0;)
        if (probs[i] > 0) return i;
    throw error("sample_index: empty distribution");
}

/* n edges sampled from the Markov measure; deterministic in (seed) */
inline std::vector<std::size_t> random_path(const SAdicGraph& graph, const PathMeasure& measure,
                                            std::uint64_t seed, std::size_t n) {
    if (measure.initial().size() != graph.edges().size())
        throw precondition_error("random_path: measure does not match the graph");
    std::vector<std::size_t> path;
    if (n == 0) return path;
    SplitMix64 rng(seed);
    path.reserve(n);
    path.push_back(sample_index(rng, measure.initial()));
    while (path.size() < n)
        path.push_back(sample_index(rng, measure.transitions()[path.back()]));
    return path;
}

struct PositivePathResult {
    bool found = false;
    std::vector<std::size_t> path;  // shortest edge path with positive product
    std::size_t searched_up_to = 0;
};

/* breadth-first search over (vertex, positivity pattern of the product) */
inline PositivePathResult positive_path_search(const SAdicGraph& graph, std::size_t max_len) {
    std::size_t d = graph.alphabet().size();
    auto pattern_of = [&](const IntMatrix& m) {
        std::string pat(d * d, '0');
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (m(i, j) > 0) pat[i * d + j] = '1';
        return pat;
    };
    auto mult_pattern = [&](const std::string& a, const std::string& b) {
        std::string c(d * d, '0');
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                if (a[i * d + k] == '1')
                    for (std::size_t j = 0; j < d; ++j)
                        if (b[k * d + j] == '1') c[i * d + j] = '1';
        return c;
    };
    std::string ones(d * d, '1');

    struct Node {
        std::size_t vertex;
        std::string pattern;
        std::size_t parent;  // index into nodes, npos for roots
        std::size_t edge;
    };
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<Node> nodes;
    std::set<std::pair<std::size_t, std::string>> visited;
    std::vector<std::string> edge_patterns;
    for (std::size_t e = 0; e < graph.edges().size(); ++e)
        edge_patterns.push_back(pattern_of(graph.edge_matrix(e)));

    auto reconstruct = [&](std::size_t node) {
        std::vector<std::size_t> path;
        for (std::size_t i = node; i != npos; i = nodes[i].parent) path.push_back(nodes[i].edge);
        std::reverse(path.begin(), path.end());
        return path;
    };

    PositivePathResult result;
    std::size_t frontier_begin = 0;
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        Node node{graph.range(e), edge_patterns[e], npos, e};
        if (node.pattern == ones) {
            result.found = true;
            result.path = {e};
            result.searched_up_to = 1;
            return result;
        }
        if (visited.emplace(node.vertex, node.pattern).second) nodes.push_back(node);
    }
    for (std::size_t len = 2; len <= max_len; ++len) {
        std::size_t frontier_end = nodes.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (std::size_t e : graph.out_edges(nodes[i].vertex)) {
                std::string pat = mult_pattern(nodes[i].pattern, edge_patterns[e]);
                Node node{graph.range(e), pat, i, e};
                if (pat == ones) {
                    nodes.push_back(node);
                    result.found = true;
                    result.path = reconstruct(nodes.size() - 1);
                    result.searched_up_to = len;
                    return result;
                }
                if (visited.emplace(node.vertex, pat).second) nodes.push_back(node);
            }
        }
        frontier_begin = frontier_end;
        if (frontier_begin == nodes.size()) break;  // no new states: exhausted
    }
    result.searched_up_to = max_len;
    return result;
}

/* directive sequence reading the substitutions along an edge path */
inline DirectiveSequence directive_from_path(const SAdicGraph& graph,
                                             std::vector<std::size_t> path) {
    if (path.empty()) throw precondition_error("directive_from_path: empty path");
    std::vector<Substitution> chain;
    chain.reserve(path.size());
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (k > 0 && graph.range(path[k - 1]) != graph.source(path[k]))
            throw precondition_error("directive_from_path: path is not edge-consistent at index " +
                                     std::to_string(k));
        chain.push_back(graph.edges().at(path[k]).substitution);
    }
    return DirectiveSequence::explicit_finite(std::move(chain), std::nullopt, "graph-path");
}

}  // namespace sadic
