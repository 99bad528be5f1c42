#pragma once

// Command-line front end. Every subcommand parses its input, calls one
// library operation and serializes the result.
//
// Exit codes: 0 success / equivalent, 1 not equivalent or a witness found
// under --expect-none, 2 input or validation error.

#include "mlqfa/dfa_analysis.hpp"
#include "mlqfa/equivalence.hpp"
#include "mlqfa/gallery.hpp"
#include "mlqfa/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mlqfa::cli {

using io::json;

enum class Format { json, text };

struct CliConfig {
    std::optional<Mode> mode;  // unset: MLQFA_MODE, then the document's own mode
    double tol = 1e-9;
    std::size_t max_k = 3;
    std::string output;  // empty: standard output
    Format format = Format::json;
};

namespace detail {

inline void render_text(std::ostream& os, const json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar = [](const json& s) { return s.is_string() ? s.get<std::string>() : s.dump(); };
    if (v.is_object()) {
        for (const auto& [key, val] : v.items()) {
            if (val.is_structured() && !val.empty()) {
                os << pad << key << ":\n";
                render_text(os, val, indent + 1);
            } else {
                os << pad << key << ": " << (val.is_structured() ? val.dump() : scalar(val)) << '\n';
            }
        }
    } else if (v.is_array()) {
        for (const auto& val : v) {
            if (val.is_structured() && !val.empty()) {
                os << pad << "-\n";
                render_text(os, val, indent + 1);
            } else {
                os << pad << "- " << scalar(val) << '\n';
            }
        }
    } else {
        os << pad << scalar(v) << '\n';
    }
}

class Runner {
public:
    Runner(CliConfig cfg, std::istream& in, std::ostream& out, std::ostream& err)
        : cfg_(std::move(cfg)), in_(in), out_(out), err_(err) {}

    int simulate(const std::string& path, const std::string& word) {
        const json doc = load(path);
        json result{{"word", word}};
        switch (io::document_type(doc)) {
            case io::DocType::dfa: {
                const DFA d = io::parse_dfa(doc);
                const State q = dfa_run(d, d.initial, word);
                result["state"] = d.states[q];
                result["accepted"] = d.is_accepting(q);
                break;
            }
            case io::DocType::kdfa: {
                const KLetterDFA d = io::parse_kdfa(doc);
                const State q = kdfa_run(d, d.alphabet.parse_word(word));
                result["state"] = d.states[q];
                result["accepted"] = static_cast<bool>(d.accepting[q]);
                break;
            }
            case io::DocType::kqfa:
                with_mode(doc, [&]<class T>() {
                    const auto a = io::parse_kqfa<T>(doc, cfg_.tol);
                    result["mode"] = to_string(scalar_traits<T>::mode);
                    result["probability"] = io::real_json<T>(accept_probability(a, word));
                });
                break;
            case io::DocType::mmqfa:
                with_mode(doc, [&]<class T>() {
                    const auto a = io::parse_mmqfa<T>(doc, cfg_.tol);
                    const auto o = mm_run(a, a.alphabet.parse_word(word));
                    result["mode"] = to_string(scalar_traits<T>::mode);
                    result["accept"] = io::real_json<T>(o.accept);
                    result["reject"] = io::real_json<T>(o.reject);
                    result["residual"] = io::real_json<T>(o.residual);
                });
                break;
        }
        emit(result);
        return 0;
    }

    int equiv(const std::string& p1, const std::string& p2, const std::string& strategy,
              std::optional<std::size_t> bound) {
        const json d1 = load(p1);
        const json d2 = load(p2);
        for (const json* d : {&d1, &d2})
            if (io::document_type(*d) != io::DocType::kqfa) throw ValidationError("type", "equiv expects kqfa documents");
        EquivalenceOptions opt;
        opt.strategy = parse_strategy(strategy);
        opt.tol = cfg_.tol;
        // Both documents must be readable in the chosen mode.
        const Mode m = effective_mode(io::document_mode(d1) == Mode::floating ? d1 : d2);
        int code = 0;
        dispatch(m, [&]<class T>() {
            const auto a1 = io::parse_kqfa<T>(d1, cfg_.tol);
            const auto a2 = io::parse_kqfa<T>(d2, cfg_.tol);
            if (!(a1.alphabet == a2.alphabet)) throw ValidationError("alphabet", "the two automata use different alphabets");
            EquivalenceVerdict<T> v;
            if (bound)
                v = bounded_equivalence(a1, a2, *bound, opt);
            else if (a1.alphabet.unary())
                v = decide_equivalence_unary(a1, a2, opt);
            else
                throw ValidationError("bound", "non-unary alphabet: pass --bound t for t-equivalence");
            json result = io::to_json(v, a1.alphabet);
            result["mode"] = to_string(scalar_traits<T>::mode);
            emit(result);
            code = v.equivalent ? 0 : 1;
        });
        return code;
    }

    int classify(const std::string& path) {
        const DFA d = load_dfa(path);
        const ClassificationReport r = mlqfa::classify(d, cfg_.max_k);
        if (!r.input_was_minimal) notice_minimized(d.size(), r.minimal.size());
        emit(io::to_json(r));
        return 0;
    }

    int minimize(const std::string& path) {
        emit(io::to_json(minimize_dfa(load_dfa(path))));
        return 0;
    }

    int witness(const std::string& path, const std::string& kind, std::size_t k, bool expect_none) {
        const DFA d = load_minimal(path);
        json result{{"kind", kind}};
        json w;
        if (kind == "ck" || kind == "dk") {
            if (k < 1) throw ValidationError("k", "must be at least 1");
            result["k"] = k;
            const auto ck = detect_ck(d, k);
            if (kind == "ck") {
                w = io::optional_json(d, ck);
            } else {
                w = ck ? io::optional_json(d, ck_to_dk(d, *ck)) : json(nullptr);
            }
        } else if (kind == "f") {
            w = io::optional_json(d, detect_f(d));
        } else if (kind == "forbidden") {
            w = io::optional_json(d, detect_forbidden(d));
        } else {
            throw ValidationError("kind", "expected ck, dk, f or forbidden");
        }
        result["found"] = !w.is_null();
        result["witness"] = w;
        emit(result);
        return expect_none && !w.is_null() ? 1 : 0;
    }

    int gallery(const std::string& id, std::optional<std::size_t> k) {
        if (id == "lk") {
            if (!k) throw ValidationError("k", "gallery lk needs --k (at least 2)");
            if (*k < 2) throw ValidationError("k", "must be at least 2");
            emit(io::to_json(build_lk_dfa(*k)));
        } else if (id == "abstarb-2qfa") {
            dispatch(cfg_.mode.value_or(env_mode().value_or(Mode::exact)),
                     [&]<class T>() { emit(io::to_json(build_abstarb_qfa<T>())); });
        } else if (id == "abstarb-kdfa") {
            emit(io::to_json(build_abstarb_kdfa()));
        } else {
            try {
                emit(io::to_json(build_named_dfa(id)));
            } catch (const std::invalid_argument&) {
                throw ValidationError("id", "unknown gallery id '" + id +
                                                "' (lk, astar-bstar, akv, abstarb, abstarb-2qfa, abstarb-kdfa, "
                                                "astar-b-aastar-a)");
            }
        }
        return 0;
    }

private:
    json load(const std::string& path) {
        if (path.empty() || path == "-") return io::read_json(in_);
        std::ifstream f(path);
        if (!f) throw ValidationError("input", "cannot open '" + path + "'");
        return io::read_json(f);
    }

    DFA load_dfa(const std::string& path) {
        const json doc = load(path);
        if (io::document_type(doc) != io::DocType::dfa) throw ValidationError("type", "expected a dfa document");
        return io::parse_dfa(doc);
    }

    DFA load_minimal(const std::string& path) {
        const DFA d = load_dfa(path);
        DFA m = minimize_dfa(d);
        if (m.size() != d.size()) notice_minimized(d.size(), m.size());
        return m;
    }

    void notice_minimized(std::size_t from, std::size_t to) {
        err_ << "notice: input DFA is not minimal (" << from << " states); analysing its minimization (" << to
             << " states)\n";
    }

    static std::optional<Mode> env_mode() {
        const char* v = std::getenv("MLQFA_MODE");
        if (!v || !*v) return std::nullopt;
        try {
            return parse_mode(v);
        } catch (const std::invalid_argument& e) {
            throw ValidationError("MLQFA_MODE", e.what());
        }
    }

    Mode effective_mode(const json& doc) const {
        const Mode own = io::document_mode(doc);
        const Mode m = cfg_.mode.value_or(env_mode().value_or(own));
        if (m == Mode::exact && own == Mode::floating)
            throw ValidationError("mode", "document has float scalars and cannot be read in exact mode");
        return m;
    }

    template <class F>
    static void dispatch(Mode m, F&& f) {
        if (m == Mode::exact)
            f.template operator()<GaussianRational>();
        else
            f.template operator()<Complexd>();
    }

    template <class F>
    void with_mode(const json& doc, F&& f) const {
        dispatch(effective_mode(doc), std::forward<F>(f));
    }

    void emit(const json& result) {
        std::ostringstream buf;
        if (cfg_.format == Format::json)
            buf << result.dump(2) << '\n';
        else
            render_text(buf, result, 0);
        if (cfg_.output.empty() || cfg_.output == "-") {
            out_ << buf.str();
            return;
        }
        std::ofstream f(cfg_.output);
        if (!f) throw ValidationError("output", "cannot write '" + cfg_.output + "'");
        f << buf.str();
    }

    CliConfig cfg_;
    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-letter quantum finite automata: simulation, equivalence and DFA classification", "mlqfa"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    std::string mode_str, format_str = "json";
    app.add_option("--mode", mode_str, "Scalar mode (overrides MLQFA_MODE)")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", cfg.tol, "Float-mode tolerance")->check(CLI::PositiveNumber);
    app.add_option("--format", format_str, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("-o,--output", cfg.output, "Write the result to this file");

    std::string file, file2, word, strategy = "span", kind, id;
    std::optional<std::size_t> bound, gk;
    std::size_t wk = 1;
    bool expect_none = false;

    auto* sim = app.add_subcommand("simulate", "Acceptance of one word");
    sim->add_option("file", file, "Automaton document")->required();
    sim->add_option("word", word, "Space-separated symbols; \"\" is the empty word")->required();

    auto* eq = app.add_subcommand("equiv", "Equivalence of two kqfa documents");
    eq->add_option("a1", file, "First automaton")->required();
    eq->add_option("a2", file2, "Second automaton")->required();
    eq->add_option("--strategy", strategy, "full|span")->check(CLI::IsMember({"full", "span"}));
    eq->add_option("--bound", bound, "Compare words up to this length only");

    auto* cls = app.add_subcommand("classify", "Classification report for a DFA");
    cls->add_option("file", file, "DFA document (- or omitted: stdin)");
    cls->add_option("--max-k", cfg.max_k, "Largest k for C_k detection")->check(CLI::PositiveNumber);

    auto* min = app.add_subcommand("minimize", "Minimal DFA");
    min->add_option("file", file, "DFA document (- or omitted: stdin)");

    auto* wit = app.add_subcommand("witness", "Find one construction in a DFA");
    wit->add_option("file", file, "DFA document (- or omitted: stdin)");
    wit->add_option("--kind", kind, "ck|dk|f|forbidden")->required()->check(CLI::IsMember({"ck", "dk", "f", "forbidden"}));
    wit->add_option("--k", wk, "Word length for ck and dk");
    wit->add_flag("--expect-none", expect_none, "Exit 1 if a witness exists");

    auto* gal = app.add_subcommand("gallery", "Emit a fixture automaton");
    gal->add_option("id", id, "lk, astar-bstar, akv, abstarb, abstarb-2qfa, abstarb-kdfa, astar-b-aastar-a")->required();
    gal->add_option("--k", gk, "Parameter for lk");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (!mode_str.empty()) cfg.mode = parse_mode(mode_str);
        cfg.format = format_str == "text" ? Format::text : Format::json;
        detail::Runner run(cfg, in, out, err);
        if (sim->parsed()) return run.simulate(file, word);
        if (eq->parsed()) return run.equiv(file, file2, strategy, bound);
        if (cls->parsed()) return run.classify(file);
        if (min->parsed()) return run.minimize(file);
        if (wit->parsed()) return run.witness(file, kind, wk, expect_none);
        if (gal->parsed()) return run.gallery(id, gk);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace mlqfa::cli
