/*
 * sadic_main.cpp
 *
 * Command-line front end.  Every subcommand echoes its effective
 * configuration into the output (json object, or a leading "# config:" line
 * in csv/text mode), uses fixed 12-significant-digit float formatting, and
 * exits with code 2 and a one-line reason on precondition errors.
 */

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sadic/balance.hpp"
#include "sadic/builtins.hpp"
#include "sadic/cf.hpp"
#include "sadic/factors.hpp"
#include "sadic/io.hpp"
#include "sadic/lyapunov.hpp"
#include "sadic/recurrence.hpp"
#include "sadic/sadic.hpp"

namespace {

using sadic::json;

/* number rounded to 12 significant digits before serialization */
json jnum(double x) {
    if (!std::isfinite(x)) return sadic::format_double(x);
    return json::parse(sadic::format_double(x));
}

struct OutputOptions {
    std::string format = "text";
};

void add_format_option(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "output format: text, json or csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "json", "csv"}));
}

void emit(const OutputOptions& out, const json& config, const json& result,
          const std::string& text_body, const std::string& csv_body) {
    json full;
    full["config"] = config;
    full["result"] = result;
    if (out.format == "json") {
        std::cout << full.dump(2) << "\n";
    } else if (out.format == "csv") {
        std::cout << "# config: " << config.dump() << "\n" << csv_body;
    } else {
        std::cout << "# config: " << config.dump() << "\n" << text_body;
    }
}

/* ---- word / directive-sequence sources shared by several subcommands ---- */

struct WordSource {
    std::string word_file;
    std::string substitution;       // built-in name or file path via subst_file
    std::string substitution_file;
    std::string seed_letter;
    std::string ds_file;
    std::string periodic;           // comma list of substitution names
    std::string seeds;              // comma list of seed letters for --periodic

    void add_options(CLI::App* cmd) {
        cmd->add_option("--word-file", word_file, "plain text word file");
        cmd->add_option("--substitution", substitution,
                        "built-in substitution name (fixed point source)");
        cmd->add_option("--substitution-file", substitution_file,
                        "substitution JSON file (fixed point source)");
        cmd->add_option("--seed-letter", seed_letter, "fixed point seed letter");
        cmd->add_option("--ds-file", ds_file, "directive sequence JSON file");
        cmd->add_option("--periodic", periodic,
                        "periodic directive sequence from comma-separated substitution names");
        cmd->add_option("--seeds", seeds, "seed letters for --periodic (comma-separated)");
    }

    json config() const {
        json c = json::object();
        if (!word_file.empty()) c["word_file"] = word_file;
        if (!substitution.empty()) c["substitution"] = substitution;
        if (!substitution_file.empty()) c["substitution_file"] = substitution_file;
        if (!seed_letter.empty()) c["seed_letter"] = seed_letter;
        if (!ds_file.empty()) c["ds_file"] = ds_file;
        if (!periodic.empty()) c["periodic"] = periodic;
        if (!seeds.empty()) c["seeds"] = seeds;
        return c;
    }

    bool has_ds() const { return !ds_file.empty() || !periodic.empty(); }

    sadic::Substitution load_substitution() const {
        if (!substitution_file.empty())
            return sadic::substitution_from_json(json::parse(sadic::read_file(substitution_file)));
        return sadic::substitution_from_spec(json(substitution));
    }

    sadic::DirectiveSequence load_ds() const {
        if (!ds_file.empty())
            return sadic::directive_from_json(json::parse(sadic::read_file(ds_file)));
        std::vector<sadic::Substitution> cycle;
        std::stringstream in(periodic);
        std::string name;
        while (std::getline(in, name, ','))
            if (!name.empty()) cycle.push_back(sadic::substitution_from_spec(json(name)));
        if (cycle.empty()) throw sadic::precondition_error("--periodic: no substitutions given");
        std::optional<std::vector<sadic::letter_t>> seed_vec;
        if (!seeds.empty()) {
            std::vector<sadic::letter_t> sv;
            std::stringstream sin(seeds);
            std::string letter;
            std::size_t i = 0;
            while (std::getline(sin, letter, ',')) {
                const sadic::Alphabet& alpha = cycle[i % cycle.size()].codomain();
                sv.push_back(alpha.index_checked(letter));
                ++i;
            }
            seed_vec = std::move(sv);
        }
        return sadic::DirectiveSequence::periodic(std::move(cycle), std::move(seed_vec));
    }

    sadic::WordStream load_stream() const {
        if (!word_file.empty())
            return sadic::WordStream::from_word(
                sadic::parse_word_text(sadic::read_file(word_file)), "word file");
        if (has_ds()) return sadic::limit_word_stream(load_ds());
        if (!substitution.empty() || !substitution_file.empty()) {
            sadic::Substitution s = load_substitution();
            sadic::letter_t seed =
                seed_letter.empty() ? 0 : s.domain().index_checked(seed_letter);
            return sadic::fixed_point_stream(s, seed);
        }
        throw sadic::precondition_error(
            "no word source: use --word-file, --substitution or a directive sequence");
    }
};

/* ------------------------------- subcommands ------------------------------ */

int cmd_generate(const WordSource& src, std::size_t length, const OutputOptions& out) {
    sadic::WordStream stream = src.load_stream();
    sadic::FiniteWord w = stream.prefix(length);
    json config = src.config();
    config["length"] = length;
    json result;
    result["word"] = sadic::word_json(w);
    result["alphabet"] = sadic::letters_json(stream.alphabet());
    std::string text = w.str() + "\n";
    std::string csv = "word\n" + w.str() + "\n";
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_complexity(const WordSource& src, std::size_t prefix_len, std::size_t max_n,
                   bool stabilize, const OutputOptions& out) {
    if (max_n == 0) throw sadic::precondition_error("complexity: --max-n must be >= 1");
    sadic::WordStream stream = src.load_stream();
    sadic::FactorTable table = sadic::factors(stream, prefix_len, max_n);
    sadic::ComplexityReport rep = sadic::complexity(table);
    auto entropy = sadic::entropy_estimate(rep.p);

    json config = src.config();
    config["prefix_len"] = prefix_len;
    config["max_n"] = max_n;
    config["stabilize"] = stabilize;

    json result;
    result["window"] = rep.window;
    result["p"] = rep.p;
    result["dp"] = rep.dp;
    result["entropy_estimate"] = jnum(entropy.at_max);
    if (stabilize)
        result["stable_up_to"] = sadic::stable_complexity_depth(stream, prefix_len, max_n);

    std::string csv = "n,p,dp\n";
    std::string text = "n\tp\tdp\n";
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::string dp = n < max_n ? std::to_string(rep.dp[n - 1]) : "";
        csv += std::to_string(n) + "," + std::to_string(rep.p[n - 1]) + "," + dp + "\n";
        text += std::to_string(n) + "\t" + std::to_string(rep.p[n - 1]) + "\t" + dp + "\n";
    }
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_recurrence(const WordSource& src, std::size_t prefix_len, std::size_t max_n,
                   const OutputOptions& out) {
    sadic::WordStream stream = src.load_stream();
    sadic::FactorTable table = sadic::factors(stream, prefix_len, max_n);
    sadic::ComplexityReport comp = sadic::complexity(table);
    sadic::RecurrenceReport rec = sadic::recurrence_function(stream, prefix_len, max_n);

    json config = src.config();
    config["prefix_len"] = prefix_len;
    config["max_n"] = max_n;

    json result;
    result["window"] = rec.window;
    json rj = json::array();
    for (const auto& r : rec.R)
        rj.push_back(r ? json(*r) : json(nullptr));
    result["p"] = comp.p;
    result["dp"] = comp.dp;
    result["R"] = std::move(rj);

    std::string csv = "n,p,dp,R\n";
    std::string text = "n\tp\tdp\tR\n";
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::string dp = n < max_n ? std::to_string(comp.dp[n - 1]) : "";
        std::string r = rec.R[n - 1] ? std::to_string(*rec.R[n - 1]) : "";
        csv += std::to_string(n) + "," + std::to_string(comp.p[n - 1]) + "," + dp + "," + r + "\n";
        text += std::to_string(n) + "\t" + std::to_string(comp.p[n - 1]) + "\t" + dp + "\t" +
                (r.empty() ? "undetermined" : r) + "\n";
    }
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_balance(const WordSource& src, std::size_t prefix_len, std::size_t max_n,
                const std::string& freq, const OutputOptions& out) {
    sadic::WordStream stream = src.load_stream();
    std::optional<std::vector<double>> f;
    if (!freq.empty()) {
        std::vector<double> v;
        std::stringstream in(freq);
        std::string tok;
        while (std::getline(in, tok, ',')) v.push_back(std::stod(tok));
        f = std::move(v);
    }
    sadic::BalanceReport rep = sadic::balance(stream, prefix_len, max_n, f);

    json config = src.config();
    config["prefix_len"] = prefix_len;
    config["max_n"] = max_n;
    if (!freq.empty()) config["freq"] = freq;

    json result;
    result["window"] = rep.window;
    result["imbalance"] = rep.imbalance;
    result["imbalance_by_letter"] = rep.imbalance_by_letter;
    result["discrepancy"] = jnum(rep.discrepancy);
    json fj = json::array();
    for (double x : rep.frequencies) fj.push_back(jnum(x));
    result["frequencies"] = std::move(fj);
    result["empirical_frequencies"] = rep.empirical_frequencies;

    const auto& alpha = stream.alphabet();
    std::string csv = "letter,imbalance,frequency,max_prefix_deviation\n";
    std::string text = "letter\timbalance\tfrequency\tmax_prefix_deviation\n";
    for (sadic::letter_t i = 0; i < alpha.size(); ++i) {
        std::string row = alpha.letter(i) + "," + std::to_string(rep.imbalance_by_letter[i]) +
                          "," + sadic::format_double(rep.frequencies[i]) + "," +
                          sadic::format_double(rep.discrepancy_by_letter[i]);
        csv += row + "\n";
        text += alpha.letter(i) + "\t" + std::to_string(rep.imbalance_by_letter[i]) + "\t" +
                sadic::format_double(rep.frequencies[i]) + "\t" +
                sadic::format_double(rep.discrepancy_by_letter[i]) + "\n";
    }
    text += "B = " + std::to_string(rep.imbalance) +
            ", D = " + sadic::format_double(rep.discrepancy) + "\n";
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_frequencies(const WordSource& src, double tol, std::size_t n_max, std::size_t profile,
                    std::size_t criterion_terms, const OutputOptions& out) {
    sadic::DirectiveSequence ds = src.load_ds();
    sadic::FrequencyResult res = sadic::generalized_eigenvector(ds, tol, n_max);

    json config = src.config();
    config["tol"] = jnum(tol);
    config["n_max"] = n_max;
    if (profile > 0) config["profile"] = profile;
    if (criterion_terms > 0) config["criterion_terms"] = criterion_terms;

    json result;
    json fj = json::array();
    for (double x : res.f) fj.push_back(jnum(x));
    result["f"] = std::move(fj);
    result["depth"] = res.depth;
    result["diameter"] = jnum(res.diameter);
    result["converged"] = res.converged;

    const sadic::Alphabet alpha = ds.alphabet_at(0);
    std::string csv = "letter,frequency\n";
    std::string text;
    for (sadic::letter_t i = 0; i < alpha.size(); ++i) {
        csv += alpha.letter(i) + "," + sadic::format_double(res.f[i]) + "\n";
        text += alpha.letter(i) + "\t" + sadic::format_double(res.f[i]) + "\n";
    }
    text += std::string("converged: ") + (res.converged ? "yes" : "no") + " at depth " +
            std::to_string(res.depth) + " (diameter " + sadic::format_double(res.diameter) +
            ")\n";

    if (profile > 0) {
        // per-depth weak/strong convergence distances
        json rows = json::array();
        std::string pheader = "depth";
        for (sadic::letter_t i = 0; i < alpha.size(); ++i)
            pheader += ",weak_" + alpha.letter(i) + ",strong_" + alpha.letter(i);
        pheader += ",diameter,delta\n";
        std::string pcsv = pheader;
        for (std::size_t n = 0; n <= profile; ++n) {
            sadic::ConvergenceProfile p = sadic::convergence_profile(ds, res.f, n);
            json row;
            row["depth"] = n;
            std::string line = std::to_string(n);
            json weak = json::array(), strong = json::array();
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                weak.push_back(jnum(p.weak[i]));
                strong.push_back(jnum(p.strong[i]));
                line += "," + sadic::format_double(p.weak[i]) + "," +
                        sadic::format_double(p.strong[i]);
            }
            row["weak"] = std::move(weak);
            row["strong"] = std::move(strong);
            row["diameter"] = jnum(p.diameter);
            row["delta"] = jnum(p.delta);
            line += "," + sadic::format_double(p.diameter) + "," +
                    sadic::format_double(p.delta);
            pcsv += line + "\n";
            rows.push_back(std::move(row));
        }
        result["profile"] = std::move(rows);
        csv += pcsv;
        text += pcsv;
    }

    if (criterion_terms > 0) {
        sadic::BalanceCriterionReport rep =
            sadic::balance_criterion_partial_sums(ds, criterion_terms);
        json terms = json::array(), sums = json::array();
        std::string ccsv = "n,term,partial_sum\n";
        for (std::size_t n = 0; n < rep.terms.size(); ++n) {
            terms.push_back(jnum(rep.terms[n]));
            sums.push_back(jnum(rep.partial_sums[n]));
            ccsv += std::to_string(n) + "," + sadic::format_double(rep.terms[n]) + "," +
                    sadic::format_double(rep.partial_sums[n]) + "\n";
        }
        result["criterion_terms"] = std::move(terms);
        result["criterion_partial_sums"] = std::move(sums);
        result["criterion_tail_ratio"] = jnum(rep.tail_ratio);
        result["criterion_verdict"] = rep.verdict;
        csv += ccsv;
        text += ccsv + rep.verdict + "\n";
    }
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_entropy_bound(const WordSource& src, std::size_t depth, std::size_t window_n,
                      const OutputOptions& out) {
    sadic::DirectiveSequence ds = src.load_ds();
    sadic::EntropyBound eb = sadic::entropy_upper_bound(ds, depth);

    json config = src.config();
    config["depth"] = depth;
    if (window_n > 0) config["window_n"] = window_n;

    json result;
    result["bound"] = jnum(eb.bound);
    result["argmin_depth"] = eb.argmin_depth;
    json per = json::array();
    for (double x : eb.per_depth) per.push_back(jnum(x));
    result["per_depth"] = std::move(per);
    if (window_n > 0) {
        sadic::EntropyBound fin = sadic::finite_window_complexity_bound(ds, window_n, depth);
        result["finite_window_bound"] = jnum(fin.bound);
        result["finite_window_argmin_depth"] = fin.argmin_depth;
    }

    std::string csv = "depth,bound\n";
    for (std::size_t n = 0; n < eb.per_depth.size(); ++n)
        csv += std::to_string(n) + "," + sadic::format_double(eb.per_depth[n]) + "\n";
    std::string text = "entropy bound: " + sadic::format_double(eb.bound) + " (at depth " +
                       std::to_string(eb.argmin_depth) + ")\n";
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_primitivity(const WordSource& src, std::size_t k_max, std::size_t start,
                    std::size_t r_max, std::size_t scan, const OutputOptions& out) {
    json config = src.config();
    json result;
    std::string text, csv;
    if (src.has_ds()) {
        config["start"] = start;
        config["r_max"] = r_max;
        config["scan"] = scan;
        sadic::DirectiveSequence ds = src.load_ds();
        sadic::PrimitivityScan sc = sadic::primitivity_check(ds, start, r_max, scan);
        json weak = json::array();
        csv = "start,weak_r\n";
        for (const auto& w : sc.weak) {
            json jw;
            jw["start"] = w.start;
            jw["r"] = w.r ? json(*w.r) : json(nullptr);
            weak.push_back(std::move(jw));
            csv += std::to_string(w.start) + "," + (w.r ? std::to_string(*w.r) : "") + "\n";
        }
        result["weak"] = std::move(weak);
        result["strong_r"] = sc.strong_r ? json(*sc.strong_r) : json(nullptr);
        result["exhausted"] = sc.exhausted;
        text = sc.strong_r
                   ? "strong witness r = " + std::to_string(*sc.strong_r) + "\n"
                   : std::string("no uniform witness up to r_max (verdict: unknown)\n");
    } else {
        config["k_max"] = k_max;
        sadic::Substitution s = src.load_substitution();
        sadic::PrimitivityResult pr = sadic::is_primitive(s, k_max);
        const char* verdict = pr.verdict == sadic::PrimitivityResult::Verdict::primitive
                                  ? "primitive"
                                  : pr.verdict == sadic::PrimitivityResult::Verdict::not_primitive
                                        ? "not-primitive"
                                        : "unknown";
        result["verdict"] = verdict;
        result["witness"] = pr.witness ? json(*pr.witness) : json(nullptr);
        result["checked_up_to"] = pr.checked_up_to;
        result["positive"] = sadic::is_positive(s);
        text = std::string(verdict) +
               (pr.witness ? " (witness k = " + std::to_string(*pr.witness) + ")" : "") + "\n";
        csv = "verdict,witness,checked_up_to\n" + std::string(verdict) + "," +
              (pr.witness ? std::to_string(*pr.witness) : "") + "," +
              std::to_string(pr.checked_up_to) + "\n";
    }
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_cf_expand(const std::string& algorithm, std::size_t dim, const std::string& vector_text,
                  std::size_t steps, const std::string& emit_what, bool accelerate,
                  const OutputOptions& out) {
    sadic::RatVector x = sadic::rational_vector_parse(vector_text);
    std::optional<sadic::CFMap> map;
    if (algorithm == "sturmian")
        map = sadic::sturmian_map();
    else if (algorithm == "arnoux-rauzy")
        map = sadic::arnoux_rauzy_map(dim ? dim : x.size());
    else if (algorithm == "jacobi-perron")
        map = sadic::jacobi_perron_map();
    else
        throw sadic::precondition_error("unknown algorithm '" + algorithm +
                                        "' (sturmian, arnoux-rauzy, jacobi-perron)");
    sadic::CFExpansion exp = sadic::cf_expand(*map, x, steps);
    if (accelerate) exp = sadic::run_length_acceleration(exp);

    json config;
    config["algorithm"] = algorithm;
    config["vector"] = vector_text;
    config["steps"] = steps;
    config["emit"] = emit_what;
    config["accelerate"] = accelerate;

    json result = sadic::expansion_to_json(exp);
    std::string text, csv;
    if (emit_what == "symbols") {
        csv = "step,symbol\n";
        for (std::size_t k = 0; k < exp.symbols.size(); ++k) {
            text += (k ? " " : "") + exp.symbols[k];
            csv += std::to_string(k) + "," + exp.symbols[k] + "\n";
        }
        text += "\n";
    } else if (emit_what == "matrices") {
        csv = "step,matrix\n";
        for (std::size_t k = 0; k < exp.matrices.size(); ++k) {
            std::string flat;
            const auto& m = exp.matrices[k];
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    flat += (flat.empty() ? "" : " ") + m(i, j).get_str();
            text += flat + "\n";
            csv += std::to_string(k) + "," + flat + "\n";
        }
    } else if (emit_what == "remainders") {
        csv = "step,remainder\n";
        for (std::size_t k = 0; k < exp.remainders.size(); ++k) {
            std::string flat;
            for (const auto& c : exp.remainders[k])
                flat += (flat.empty() ? "" : ",") + c.get_str();
            text += flat + "\n";
            csv += std::to_string(k) + ",\"" + flat + "\"\n";
        }
    } else {
        throw sadic::precondition_error("--emit must be symbols, matrices or remainders");
    }
    if (exp.halted) text += "halt: " + exp.halt_reason + "\n";
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_lyapunov(const std::string& graph_file, const sadic::LyapunovParams& params,
                 const std::string& trajectory_csv, const OutputOptions& out) {
    sadic::GraphWithMeasure gm =
        sadic::graph_from_json(json::parse(sadic::read_file(graph_file)), graph_file);
    if (!gm.graph.strongly_connected())
        std::cerr << "warning: graph is not strongly connected\n";
    sadic::LyapunovEstimate est = sadic::lyapunov(gm.graph, gm.measure, params);
    sadic::PisotReport pr = sadic::pisot_report(est);

    json config;
    config["graph"] = graph_file;
    config["steps"] = params.steps;
    config["trajectories"] = params.trajectories;
    config["seed"] = params.seed;
    config["renorm_period"] = params.renorm_period;

    json result;
    result["theta1"] = jnum(est.theta1);
    result["theta2"] = jnum(est.theta2);
    result["stderr1"] = jnum(est.stderr1);
    result["stderr2"] = jnum(est.stderr2);
    result["log_integrable"] = est.log_integrable;
    result["pisot"] = pr.verdict;
    result["deviation_exponent"] = jnum(pr.deviation_exponent);
    result["approximation_exponent"] = jnum(pr.approximation_exponent);

    std::string csv = "trajectory,theta1,theta2\n";
    for (std::size_t t = 0; t < est.per_trajectory_theta1.size(); ++t)
        csv += std::to_string(t) + "," + sadic::format_double(est.per_trajectory_theta1[t]) +
               "," + sadic::format_double(est.per_trajectory_theta2[t]) + "\n";
    if (!trajectory_csv.empty()) sadic::write_file(trajectory_csv, csv);

    std::string text = "theta1 = " + sadic::format_double(est.theta1) + " +- " +
                       sadic::format_double(est.stderr1) + "\n" +
                       "theta2 = " + sadic::format_double(est.theta2) + " +- " +
                       sadic::format_double(est.stderr2) + "\n" + "pisot: " + pr.verdict + "\n";
    emit(out, config, result, text, csv);
    return 0;
}

int cmd_cassaigne(const std::string& word_file, bool verify, const OutputOptions& out) {
    sadic::FiniteWord w = sadic::parse_word_text(sadic::read_file(word_file));
    sadic::DirectiveSequence ds = sadic::cassaigne_expansion(w);

    json config;
    config["word_file"] = word_file;
    config["verify"] = verify;

    json result;
    result["ds"] = sadic::directive_to_json(ds, w.size());
    if (verify) {
        sadic::WordStream stream = sadic::limit_word_stream(ds);
        bool roundtrip = stream.prefix(w.size()) == sadic::FiniteWord(stream.alphabet(),
                                                                      w.letters());
        auto growth = sadic::everywhere_growing_check(ds, w.size());
        result["roundtrip"] = roundtrip;
        result["everywhere_growing"] = growth.growing;
    }
    std::string text = "directive sequence with " + std::to_string(w.size()) +
                       " substitutions over " + std::to_string(w.alphabet().size() + 1) +
                       " letters\n";
    if (verify)
        text += std::string("roundtrip: ") +
                (result["roundtrip"].get<bool>() ? "exact" : "FAILED") + "\n";
    emit(out, config, result, text, result.dump() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"s-adic words: substitutions, complexity, frequencies, continued fractions "
                 "and Lyapunov exponents"};
    app.require_subcommand(1);

    OutputOptions out;

    // generate
    auto* generate = app.add_subcommand("generate", "emit a prefix of a word");
    WordSource gen_src;
    std::size_t gen_length = 100;
    gen_src.add_options(generate);
    generate->add_option("--length", gen_length, "prefix length")->capture_default_str();
    add_format_option(generate, out);

    // complexity
    auto* complexity = app.add_subcommand("complexity", "factor complexity p(n) on a window");
    WordSource cx_src;
    std::size_t cx_prefix = 100000, cx_maxn = 50;
    bool cx_stabilize = false;
    cx_src.add_options(complexity);
    complexity->add_option("--prefix-len", cx_prefix, "window length")->capture_default_str();
    complexity->add_option("--max-n", cx_maxn, "largest factor length")->capture_default_str();
    complexity->add_flag("--stabilize", cx_stabilize,
                         "report the largest n stable under window doubling");
    add_format_option(complexity, out);

    // recurrence
    auto* recurrence = app.add_subcommand("recurrence", "recurrence function R(n) on a window");
    WordSource rec_src;
    std::size_t rec_prefix = 100000, rec_maxn = 20;
    rec_src.add_options(recurrence);
    recurrence->add_option("--prefix-len", rec_prefix, "window length")->capture_default_str();
    recurrence->add_option("--max-n", rec_maxn, "largest factor length")->capture_default_str();
    add_format_option(recurrence, out);

    // balance
    auto* balance = app.add_subcommand("balance", "balance and discrepancy on a window");
    WordSource bal_src;
    std::size_t bal_prefix = 65536, bal_maxn = 256;
    std::string bal_freq;
    bal_src.add_options(balance);
    balance->add_option("--prefix-len", bal_prefix, "window length")->capture_default_str();
    balance->add_option("--max-n", bal_maxn, "largest factor length")->capture_default_str();
    balance->add_option("--freq", bal_freq,
                        "exact frequency vector (comma-separated, sums to 1); default empirical");
    add_format_option(balance, out);

    // frequencies
    auto* frequencies =
        app.add_subcommand("frequencies", "letter frequencies via nested matrix cones");
    WordSource fr_src;
    double fr_tol = 1e-10;
    std::size_t fr_nmax = 10000, fr_profile = 0, fr_terms = 0;
    fr_src.add_options(frequencies);
    frequencies->add_option("--tol", fr_tol, "projective diameter tolerance")
        ->capture_default_str();
    frequencies->add_option("--n-max", fr_nmax, "maximum cone depth")->capture_default_str();
    frequencies->add_option("--profile", fr_profile,
                            "also emit weak/strong convergence distances up to this depth");
    frequencies->add_option("--criterion-terms", fr_terms,
                            "also emit this many balance-criterion partial-sum terms");
    add_format_option(frequencies, out);

    // entropy-bound
    auto* entropy = app.add_subcommand("entropy-bound", "entropy upper bound along the chain");
    WordSource en_src;
    std::size_t en_depth = 20, en_window = 0;
    en_src.add_options(entropy);
    entropy->add_option("--depth", en_depth, "maximum chain depth")->capture_default_str();
    entropy->add_option("--window-n", en_window,
                        "also report the finite-window bound for this measurement length");
    add_format_option(entropy, out);

    // primitivity
    auto* primitivity =
        app.add_subcommand("primitivity", "positivity/primitivity of substitutions or chains");
    WordSource pr_src;
    std::size_t pr_kmax = 0, pr_start = 0, pr_rmax = 16, pr_scan = 8;
    pr_src.add_options(primitivity);
    primitivity->add_option("--k-max", pr_kmax, "power bound (0 = Wielandt bound)")
        ->capture_default_str();
    primitivity->add_option("--start", pr_start, "first chain index to scan")
        ->capture_default_str();
    primitivity->add_option("--r-max", pr_rmax, "largest block length")->capture_default_str();
    primitivity->add_option("--scan", pr_scan, "number of start indices to scan")
        ->capture_default_str();
    add_format_option(primitivity, out);

    // cf-expand
    auto* cf = app.add_subcommand("cf-expand", "continued fraction expansion of a vector");
    std::string cf_algorithm = "sturmian", cf_vector, cf_emit = "symbols";
    std::size_t cf_dim = 0, cf_steps = 20;
    bool cf_accel = false;
    cf->add_option("--algorithm", cf_algorithm, "sturmian, arnoux-rauzy or jacobi-perron")
        ->capture_default_str();
    cf->add_option("--vector", cf_vector, "exact rational vector, e.g. 3/5,1,7/2")->required();
    cf->add_option("--steps", cf_steps, "maximum steps")->capture_default_str();
    cf->add_option("--dim", cf_dim, "dimension for arnoux-rauzy (default: vector size)");
    cf->add_option("--emit", cf_emit, "symbols, matrices or remainders")->capture_default_str();
    cf->add_flag("--accelerate", cf_accel, "run-length group the expansion");
    add_format_option(cf, out);

    // lyapunov
    auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponents of a graph cocycle");
    std::string ly_graph, ly_csv;
    sadic::LyapunovParams ly_params;
    lyap->add_option("--graph", ly_graph, "graph JSON file")->required();
    lyap->add_option("--steps", ly_params.steps, "steps per trajectory")->capture_default_str();
    lyap->add_option("--trajectories", ly_params.trajectories, "number of trajectories")
        ->capture_default_str();
    lyap->add_option("--seed", ly_params.seed, "random seed")->capture_default_str();
    lyap->add_option("--renorm", ly_params.renorm_period, "renormalization period")
        ->capture_default_str();
    lyap->add_option("--trajectory-csv", ly_csv, "write per-trajectory estimates to this file");
    add_format_option(lyap, out);

    // cassaigne
    auto* cassaigne =
        app.add_subcommand("cassaigne", "directive sequence representing an arbitrary word");
    std::string ca_word;
    bool ca_verify = false;
    cassaigne->add_option("--word-file", ca_word, "plain text word file")->required();
    cassaigne->add_flag("--verify", ca_verify, "check the round trip and growth profile");
    add_format_option(cassaigne, out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(gen_src, gen_length, out);
        if (complexity->parsed())
            return cmd_complexity(cx_src, cx_prefix, cx_maxn, cx_stabilize, out);
        if (recurrence->parsed()) return cmd_recurrence(rec_src, rec_prefix, rec_maxn, out);
        if (balance->parsed()) return cmd_balance(bal_src, bal_prefix, bal_maxn, bal_freq, out);
        if (frequencies->parsed())
            return cmd_frequencies(fr_src, fr_tol, fr_nmax, fr_profile, fr_terms, out);
        if (entropy->parsed()) return cmd_entropy_bound(en_src, en_depth, en_window, out);
        if (primitivity->parsed())
            return cmd_primitivity(pr_src, pr_kmax, pr_start, pr_rmax, pr_scan, out);
        if (cf->parsed())
            return cmd_cf_expand(cf_algorithm, cf_dim, cf_vector, cf_steps, cf_emit, cf_accel,
                                 out);
        if (lyap->parsed()) return cmd_lyapunov(ly_graph, ly_params, ly_csv, out);
        if (cassaigne->parsed()) return cmd_cassaigne(ca_word, ca_verify, out);
    } catch (const sadic::precondition_error& e) {
        std::cerr << "error: precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
