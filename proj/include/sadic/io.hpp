/*
 * io.hpp
 *
 * File formats and serialization.
 *
 * Substitution (JSON):
 *   {"name": str, "domain": [letters], "codomain": [letters],
 *    "rules": {letter: "string-of-letters"}}
 * with arrays of letters instead of strings when letters are multi-character.
 *
 * Directive sequence (JSON):
 *   {"kind": "periodic"|"eventually-periodic"|"explicit",
 *    "substitutions": [names or inline substitutions], "seeds": [letters],
 *    "pre": [...], "cycle": [...]}
 *
 * Graph (JSON):
 *   {"vertices": [...],
 *    "edges": [{"id", "from", "to", "substitution": name-or-inline}],
 *    "measure": {"initial": {edge: p}, "transitions": {edge: {edge: p}}}}
 *
 * Serialization uses insertion-ordered JSON and a fixed 12-significant-digit
 * float format, so identical inputs produce byte-identical output.
 */

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sadic/builtins.hpp"
#include "sadic/cf.hpp"
#include "sadic/directive.hpp"
#include "sadic/graph.hpp"
#include "sadic/substitution.hpp"

namespace sadic {

using json = nlohmann::ordered_json;

/* fixed 12 significant digits; the golden-test float format */
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
}

inline json letters_json(const Alphabet& a) {
    json out = json::array();
    for (const auto& l : a.letters()) out.push_back(l);
    return out;
}

inline json word_json(const FiniteWord& w) {
    if (w.alphabet().single_char()) return w.str();
    json out = json::array();
    for (letter_t l : w.letters()) out.push_back(w.alphabet().letter(l));
    return out;
}

inline FiniteWord word_from_json(const Alphabet& a, const json& j) {
    std::vector<letter_t> letters;
    if (j.is_string()) {
        return FiniteWord::parse(a, j.get<std::string>());
    }
    for (const auto& l : j) letters.push_back(a.index_checked(l.get<std::string>()));
    return FiniteWord(a, std::move(letters));
}

inline json substitution_to_json(const Substitution& s) {
    json j;
    j["name"] = s.name();
    j["domain"] = letters_json(s.domain());
    j["codomain"] = letters_json(s.codomain());
    json rules = json::object();
    for (letter_t a = 0; a < s.domain().size(); ++a)
        rules[s.domain().letter(a)] = word_json(s.image(a));
    j["rules"] = std::move(rules);
    return j;
}

inline Substitution substitution_from_json(const json& j) {
    Alphabet domain = Alphabet::from_letters(j.at("domain").get<std::vector<std::string>>());
    Alphabet codomain = j.contains("codomain")
                            ? Alphabet::from_letters(j.at("codomain").get<std::vector<std::string>>())
                            : domain;
    std::vector<FiniteWord> images;
    const json& rules = j.at("rules");
    for (letter_t a = 0; a < domain.size(); ++a) {
        const std::string& letter = domain.letter(a);
        if (!rules.contains(letter))
            throw precondition_error("substitution: missing rule for letter '" + letter + "'");
        images.push_back(word_from_json(codomain, rules.at(letter)));
    }
    return Substitution(domain, codomain, std::move(images),
                        j.contains("name") ? j.at("name").get<std::string>() : "");
}

/* a name from the built-in registry, or an inline substitution object */
inline Substitution substitution_from_spec(const json& j) {
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (auto s = builtins::find(name)) return *s;
        std::string known;
        for (const auto& n : builtins::names()) known += (known.empty() ? "" : ", ") + n;
        throw precondition_error("unknown substitution '" + name + "'; built-ins: " + known);
    }
    return substitution_from_json(j);
}

/*
 * Periodic kinds serialize one period (plus the pre part); explicit chains
 * serialize whole.  Functional providers are truncated at explicit_limit and
 * emitted as an explicit chain, which is lossy by nature.
 */
inline json directive_to_json(const DirectiveSequence& ds, std::size_t explicit_limit = 64) {
    json j;
    auto dump_range = [&](std::size_t from, std::size_t to) {
        json arr = json::array();
        for (std::size_t n = from; n < to; ++n) {
            auto s = ds.substitution(n);
            if (!s) break;
            arr.push_back(substitution_to_json(*s));
        }
        return arr;
    };
    auto dump_seeds = [&](std::size_t count) {
        json seeds = json::array();
        for (std::size_t n = 0; n < count; ++n) {
            auto a = ds.seed(n);
            if (!a) break;
            seeds.push_back(ds.alphabet_at(n).letter(*a));
        }
        return seeds;
    };
    switch (ds.kind()) {
        case DirectiveSequence::Kind::periodic: {
            j["kind"] = "periodic";
            j["substitutions"] = dump_range(0, ds.period());
            if (ds.has_seeds()) j["seeds"] = dump_seeds(ds.seed_period());
            return j;
        }
        case DirectiveSequence::Kind::eventually_periodic: {
            j["kind"] = "eventually-periodic";
            j["pre"] = dump_range(0, ds.pre_length());
            j["cycle"] = dump_range(ds.pre_length(), ds.pre_length() + ds.period());
            if (ds.has_seeds()) j["seeds"] = dump_seeds(ds.pre_length() + ds.seed_period());
            return j;
        }
        default: {
            j["kind"] = "explicit";
            std::size_t limit = ds.length().value_or(explicit_limit);
            j["substitutions"] = dump_range(0, limit);
            if (ds.has_seeds()) j["seeds"] = dump_seeds(limit + 1);
            return j;
        }
    }
}

inline DirectiveSequence directive_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    auto parse_list = [&](const json& arr) {
        std::vector<Substitution> subs;
        for (const auto& e : arr) subs.push_back(substitution_from_spec(e));
        return subs;
    };
    auto parse_seeds = [&](const std::vector<Substitution>& reference, bool cyclic)
        -> std::optional<std::vector<letter_t>> {
        if (!j.contains("seeds")) return std::nullopt;
        if (reference.empty()) return std::nullopt;
        std::vector<letter_t> seeds;
        const json& arr = j.at("seeds");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            // seed a_i lives in A_i = codomain(sigma_i); past the end of an
            // explicit chain it lives in the last domain
            const Alphabet& alpha =
                cyclic ? reference[i % reference.size()].codomain()
                       : (i < reference.size() ? reference[i].codomain()
                                               : reference.back().domain());
            seeds.push_back(alpha.index_checked(arr[i].get<std::string>()));
        }
        return seeds;
    };
    if (kind == "periodic") {
        auto cycle = parse_list(j.at("substitutions"));
        return DirectiveSequence::periodic(cycle, parse_seeds(cycle, true));
    }
    if (kind == "eventually-periodic") {
        auto pre = parse_list(j.at("pre"));
        auto cycle = parse_list(j.at("cycle"));
        std::vector<Substitution> all = pre;
        for (std::size_t i = 0; all.size() < pre.size() + 64; ++i)
            all.push_back(cycle[i % cycle.size()]);
        return DirectiveSequence::eventually_periodic(pre, cycle, parse_seeds(all, false));
    }
    if (kind == "explicit") {
        auto chain = parse_list(j.at("substitutions"));
        return DirectiveSequence::explicit_finite(chain, parse_seeds(chain, false));
    }
    throw precondition_error("directive sequence: unknown kind '" + kind + "'");
}

inline json graph_to_json(const SAdicGraph& graph, const PathMeasure* measure = nullptr) {
    json j;
    j["vertices"] = graph.vertices();
    json edges = json::array();
    for (const auto& e : graph.edges()) {
        json je;
        je["id"] = e.id;
        je["from"] = e.from;
        je["to"] = e.to;
        je["substitution"] = substitution_to_json(e.substitution);
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    if (measure) {
        json m;
        json initial = json::object();
        for (std::size_t e = 0; e < graph.edges().size(); ++e)
            if (measure->initial()[e] > 0)
                initial[graph.edges()[e].id] = measure->initial()[e];
        json transitions = json::object();
        for (std::size_t e = 0; e < graph.edges().size(); ++e) {
            json row = json::object();
            for (std::size_t f = 0; f < graph.edges().size(); ++f)
                if (measure->transitions()[e][f] > 0)
                    row[graph.edges()[f].id] = measure->transitions()[e][f];
            transitions[graph.edges()[e].id] = std::move(row);
        }
        m["initial"] = std::move(initial);
        m["transitions"] = std::move(transitions);
        j["measure"] = std::move(m);
    }
    return j;
}

struct GraphWithMeasure {
    SAdicGraph graph;
    PathMeasure measure;
};

inline GraphWithMeasure graph_from_json(const json& j, const std::string& name = "graph") {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<GraphEdge> edges;
    for (const auto& je : j.at("edges")) {
        edges.push_back(GraphEdge{je.at("id").get<std::string>(), je.at("from").get<std::string>(),
                                  je.at("to").get<std::string>(),
                                  substitution_from_spec(je.at("substitution"))});
    }
    SAdicGraph graph(name, std::move(vertices), std::move(edges));
    if (!j.contains("measure")) {
        PathMeasure measure = PathMeasure::uniform(graph);
        return GraphWithMeasure{std::move(graph), std::move(measure)};
    }
    const json& m = j.at("measure");
    std::size_t E = graph.edges().size();
    std::vector<double> initial(E, 0.0);
    for (const auto& [id, p] : m.at("initial").items()) initial[graph.edge(id)] = p.get<double>();
    std::vector<std::vector<double>> tr(E, std::vector<double>(E, 0.0));
    for (const auto& [from, row] : m.at("transitions").items())
        for (const auto& [to, p] : row.items()) tr[graph.edge(from)][graph.edge(to)] = p.get<double>();
    PathMeasure measure(graph, std::move(initial), std::move(tr));
    return GraphWithMeasure{std::move(graph), std::move(measure)};
}

inline json expansion_to_json(const CFExpansion& exp) {
    json j;
    j["map"] = exp.map_name;
    json input = json::array();
    for (const auto& c : exp.input) input.push_back(c.get_str());
    j["input"] = std::move(input);
    j["symbols"] = exp.symbols;
    json mats = json::array();
    for (const auto& m : exp.matrices) {
        json rows = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    j["matrices"] = std::move(mats);
    json rem = json::array();
    for (const auto& r : exp.remainders) {
        json v = json::array();
        for (const auto& c : r) v.push_back(c.get_str());
        rem.push_back(std::move(v));
    }
    j["remainders"] = std::move(rem);
    j["halted"] = exp.halted;
    if (exp.halted) j["halt_reason"] = exp.halt_reason;
    return j;
}

/* "p/q" or "p" tokens, comma-separated */
inline RatVector rational_vector_parse(const std::string& text) {
    RatVector out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            mpq_class q(tok);
            q.canonicalize();
            out.push_back(q);
        } catch (const std::invalid_argument&) {
            throw precondition_error("cannot parse rational '" + tok + "' (use p or p/q)");
        }
    }
    if (out.empty()) throw precondition_error("empty vector");
    return out;
}

/*
 * Word text: one letter per character, or whitespace-separated multi-character
 * letters.  The alphabet is the sorted set of distinct letters.
 */
inline FiniteWord parse_word_text(const std::string& text) {
    std::vector<std::string> tokens;
    if (text.find_first_of(" \t\r\n") != std::string::npos) {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
    } else {
        for (char c : text) tokens.push_back(std::string(1, c));
    }
    if (tokens.empty()) throw precondition_error("word file contains no letters");
    std::vector<std::string> distinct = tokens;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    Alphabet alpha = Alphabet::from_letters(distinct);
    std::vector<letter_t> letters;
    letters.reserve(tokens.size());
    for (const auto& t : tokens) letters.push_back(*alpha.index(t));
    return FiniteWord(alpha, std::move(letters));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw precondition_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw precondition_error("cannot write file '" + path + "'");
    out << content;
}

}  // namespace sadic
