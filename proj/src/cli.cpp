#include "gybe/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gybe/block_solutions.hpp"
#include "gybe/braid.hpp"
#include "gybe/equivalence.hpp"
#include "gybe/registry.hpp"
#include "gybe/search.hpp"
#include "gybe/serialization.hpp"
#include "gybe/text.hpp"

namespace gybe {

namespace {

struct Options {
    bool json = false;
    std::vector<std::string> solutions;
    std::string matrix;
    std::string signature;
    std::optional<double> tol;
    std::string check = "gybe";

    int family = 0;
    std::optional<double> theta;
    std::string alpha, beta;

    std::string omega, gamma, delta;

    std::vector<std::string> shapes;
    bool local_only = false;
    bool no_inverse = false;
    std::optional<unsigned> restarts;
    std::uint64_t seed = 1;

    std::string word;
    std::string compare;
    std::string state;
    std::string gate;

    std::string pattern = "rowell";
    std::size_t max_iter = 400;
    std::string param = "free-complex";
    unsigned threads = 0;
};

std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot read '" + path + "'");
        buf << f.rdbuf();
    }
    return buf.str();
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

class Command {
public:
    Command(const Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

    int verify() const {
        const RMatrix r = load(0);
        const Tolerance tol{o_.tol.value_or(kExactTolerance)};
        CheckReport report;
        if (o_.check == "gybe") {
            report = check_gybe(r, tol);
        } else if (o_.check == "ybe") {
            report = check_ybe(r.matrix(), tol);
        } else if (o_.check == "unitary") {
            report = make_report({is_unitary(r.matrix(), tol).residual}, tol);
        } else if (o_.check == "far") {
            report = check_far_commutativity(r, tol);
        } else if (o_.check == "blocks") {
            const BlockSolution s = BlockSolution::from_matrix(r.matrix(), 1e-12);
            report = check_block_equations(s.x_matrix(), s.y_matrix(), tol);
        } else {
            throw ParseError("unknown check '" + o_.check + "'");
        }
        if (o_.json) {
            emit(to_json(report));
        } else {
            out_ << "check      " << o_.check << "\n"
                 << "signature  " << to_string(r.signature()) << "\n"
                 << "passed     " << (report.passed ? "true" : "false") << "\n"
                 << "residual   " << report.residual << "\n"
                 << "tolerance  " << report.tolerance << "\n";
            if (report.vacuous) out_ << "vacuous    " << (*report.vacuous ? "true" : "false") << "\n";
        }
        return report.passed ? kExitPass : kExitFail;
    }

    int family() const {
        if (o_.family == 0) throw ParseError("family needs --family {1,2,3}");
        const bool general = !o_.alpha.empty() || !o_.beta.empty();
        if (general == o_.theta.has_value()) throw ParseError("family needs either --theta or --alpha and --beta");
        RMatrix r = general ? general_solution({o_.family, parse_complex(o_.alpha.empty() ? "1,0" : o_.alpha),
                                                parse_complex(o_.beta.empty() ? "1,0" : o_.beta)})
                            : family_solution({o_.family, *o_.theta});
        emit(to_json(r));
        return kExitPass;
    }

    int classify() const {
        Complex w, g, d;
        if (!o_.omega.empty() || !o_.gamma.empty() || !o_.delta.empty()) {
            if (o_.omega.empty() || o_.gamma.empty() || o_.delta.empty()) {
                throw ParseError("classify needs all of --omega, --gamma, --delta");
            }
            w = parse_complex(o_.omega);
            g = parse_complex(o_.gamma);
            d = parse_complex(o_.delta);
        } else {
            const BlockSolution s = BlockSolution::from_matrix(load(0).matrix(), 1e-9);
            if (std::abs(s.a.p) == 0.0) throw DomainError("top-left entry is zero; cannot normalize");
            w = s.a.q / s.a.p;
            g = s.d.p / s.a.p;
            d = s.d.q / s.a.p;
        }
        const ParamCategory c = classify_unitary_params(w, g, d, std::max(o_.tol.value_or(kClassifyTolerance), kClassifyTolerance));
        const CheckReport constraints = check_param_constraints(w, g, d, Tolerance{kClassifyTolerance});
        if (o_.json) {
            emit({{"category", to_string(c)},
                  {"omega", {w.real(), w.imag()}},
                  {"gamma", {g.real(), g.imag()}},
                  {"delta", {d.real(), d.imag()}},
                  {"constraints", to_json(constraints)}});
        } else {
            out_ << to_string(c) << "\n";
        }
        return c == ParamCategory::None ? kExitFail : kExitPass;
    }

    int equiv() const {
        const RMatrix source = load(0);
        const RMatrix target = load(1);
        ConjugatorSearchOptions search;
        if (!o_.shapes.empty()) {
            search.shapes.clear();
            for (const auto& s : o_.shapes) search.shapes.push_back(parse_conjugator_shape(s));
        }
        if (o_.restarts) search.restarts = *o_.restarts;
        search.seed = o_.seed;
        search.tolerance = std::max(o_.tol.value_or(kWitnessTolerance), kWitnessTolerance);
        std::optional<EquivalenceWitness> witness;
        if (o_.local_only) {
            if (const auto match = search_local_conjugation(source, target, search)) {
                witness = EquivalenceWitness{{LocalConjOp{match->q}}, source.label(), target.label(), match->residual};
            }
        } else {
            witness = find_equivalence(source, target, {search, !o_.no_inverse});
        }
        if (!witness) {
            if (o_.json) emit(Json("none"));
            else out_ << "none\n";
            return kExitFail;
        }
        emit(to_json(*witness));
        return kExitPass;
    }

    int braid() const {
        if (o_.word.empty()) throw ParseError("braid needs --word");
        const BraidWord w = parse_braid_word(o_.word);
        const Tolerance tol{o_.tol.value_or(kExactTolerance)};
        const BraidRep rep = BraidRep::build(load(0), w.strands, tol);
        const ComplexMatrix u = rep.evaluate(w);
        if (!o_.compare.empty()) {
            const BraidWord v = parse_braid_word(o_.compare);
            if (v.strands != w.strands) throw ParseError("compared words have different strand counts");
            const double diff = max_abs_diff(u, rep.evaluate(v));
            const bool equal = tol.admits(diff);
            if (o_.json) {
                emit({{"equal", equal}, {"difference", diff}, {"tolerance", tol.value()}});
            } else {
                out_ << "equal       " << (equal ? "true" : "false") << "\n"
                     << "difference  " << diff << "\n"
                     << "tolerance   " << tol.value() << "\n";
            }
            return equal ? kExitPass : kExitFail;
        }
        if (!o_.state.empty()) {
            const StateVector s = state_from_json(parse_json(read_source(o_.state, in_)));
            emit(to_json(rep.apply(w, s)));
            return kExitPass;
        }
        if (!o_.gate.empty()) {
            const ComplexMatrix g = matrix_from_json(parse_json(read_source(o_.gate, in_)));
            const auto match = rep.recognize_gate(g, tol);
            if (!match) {
                if (o_.json) emit(Json("none"));
                else out_ << "none\n";
                return kExitFail;
            }
            emit({{"index", match->index}, {"lambda", {match->lambda.real(), match->lambda.imag()}}});
            return kExitPass;
        }
        emit(to_json(u));
        return kExitPass;
    }

    int search() const {
        SearchConfig cfg;
        cfg.tolerance = o_.tol.value_or(kSearchTolerance);
        if (o_.restarts) cfg.restarts = *o_.restarts;
        cfg.seed = o_.seed;
        cfg.max_iterations = o_.max_iter;
        cfg.parameterization = parse_parameterization(o_.param);
        cfg.threads = o_.threads;
        const GybeSignature sig = o_.signature.empty() ? GybeSignature{} : parse_signature(o_.signature);
        ZeroPattern pattern = o_.pattern == "rowell"     ? rowell_pattern()
                              : o_.pattern == "block"    ? block_pattern()
                              : o_.pattern == "diagonal" ? ZeroPattern::diagonal(sig.matrix_size())
                                                         : parse_pattern(read_source(o_.pattern, in_));
        const SearchResult result = solve_pattern(pattern, sig, cfg);
        if (o_.json) {
            emit(to_json(result));
        } else {
            out_ << "restarts    " << cfg.restarts << "\n"
                 << "certified   " << result.certified << "\n"
                 << "distinct    " << result.solutions.size() << "\n"
                 << "best        " << std::sqrt(result.best_objective) << "\n";
            for (const auto& s : result.solutions) {
                out_ << "  restart " << std::setw(3) << s.restart << "  residual " << s.residual << "\n";
            }
        }
        return result.solutions.empty() ? kExitFail : kExitPass;
    }

    int registry() const {
        const auto entries = registry_entries();
        if (o_.json) {
            Json list = Json::array();
            for (const auto& e : entries) list.push_back({{"id", e.id}, {"description", e.description}});
            emit(list);
        } else {
            std::size_t width = 0;
            for (const auto& e : entries) width = std::max(width, e.id.size());
            for (const auto& e : entries) out_ << std::left << std::setw(static_cast<int>(width + 2)) << e.id << e.description << "\n";
        }
        return kExitPass;
    }

private:
    static Json parse_json(const std::string& text) {
        try {
            return Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
    }

    // The k-th solution: --solution ids first, then --matrix.
    RMatrix load(std::size_t k) const {
        if (k < o_.solutions.size()) {
            RMatrix r = resolve_solution(o_.solutions[k]);
            if (!o_.signature.empty() && !(parse_signature(o_.signature) == r.signature())) {
                throw DomainError("solution '" + o_.solutions[k] + "' has signature " + to_string(r.signature()) +
                                  ", not " + o_.signature);
            }
            return r;
        }
        if (k == o_.solutions.size() && !o_.matrix.empty()) {
            MatrixDocument doc = parse_matrix_document(read_source(o_.matrix, in_));
            GybeSignature sig = o_.signature.empty() ? doc.signature.value_or(GybeSignature{})
                                                     : parse_signature(o_.signature);
            return RMatrix(sig, std::move(doc.matrix), doc.label.empty() ? "matrix" : doc.label);
        }
        throw ParseError(k == 0 ? "need --solution <id> or --matrix <path|->"
                                : "need a second solution (--solution <id> or --matrix <path|->)");
    }

    void emit(const Json& j) const { out_ << (o_.json ? j.dump() : j.dump(2)) << "\n"; }

    const Options& o_;
    std::istream& in_;
    std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Generalized Yang-Baxter solutions, equivalences and braid representations", "gybe"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_flag("--json", o.json, "compact JSON output");

    auto add_input = [&](CLI::App* sub, bool two) {
        sub->add_option("--solution", o.solutions, "registry id (see `gybe registry`)")->expected(1, two ? 2 : 1);
        sub->add_option("--matrix", o.matrix, "matrix JSON file, or - for stdin");
        sub->add_option("--signature", o.signature, "d,m,l (default 2,3,1 or the file's signature)");
    };

    auto* verify = app.add_subcommand("verify", "check a solution");
    add_input(verify, false);
    verify->add_option("--tol", o.tol, "tolerance (default 1e-12)");
    verify->add_option("--check", o.check, "gybe, ybe, unitary, far or blocks")->capture_default_str();

    auto* family = app.add_subcommand("family", "emit a family member as matrix JSON");
    family->add_option("--family", o.family, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    family->add_option("--theta", o.theta, "angle in radians, 0 <= theta <= pi");
    family->add_option("--alpha", o.alpha, "re,im on the unit circle");
    family->add_option("--beta", o.beta, "re,im on the unit circle");

    auto* classify = app.add_subcommand("classify", "categorize (omega, gamma, delta)");
    add_input(classify, false);
    classify->add_option("--omega", o.omega, "re,im");
    classify->add_option("--gamma", o.gamma, "re,im");
    classify->add_option("--delta", o.delta, "re,im");
    classify->add_option("--tol", o.tol, "tolerance (at least 1e-9)");

    auto* equiv = app.add_subcommand("equiv", "search a gauge equivalence from the first solution to the second");
    add_input(equiv, true);
    equiv->add_option("--shapes", o.shapes, "diagonal, antidiagonal, general")->delimiter(',');
    equiv->add_flag("--local-only", o.local_only, "local conjugation only, no scalar or inverse");
    equiv->add_flag("--no-inverse", o.no_inverse, "do not try the inverse of the first solution");
    equiv->add_option("--restarts", o.restarts, "restarts per shape");
    equiv->add_option("--seed", o.seed, "random seed");
    equiv->add_option("--tol", o.tol, "witness tolerance (at least 1e-9)");

    auto* braid = app.add_subcommand("braid", "evaluate a braid word in the representation of a solution");
    add_input(braid, false);
    braid->add_option("--word", o.word, "\"n=<strands>: i,j,...\"")->required();
    braid->add_option("--compare", o.compare, "second word; report the max entry difference");
    braid->add_option("--state", o.state, "state JSON (one column) to apply the word to");
    braid->add_option("--gate", o.gate, "matrix JSON to recognize as a scaled generator");
    braid->add_option("--tol", o.tol, "tolerance (default 1e-12)");

    auto* search = app.add_subcommand("search", "numerical search for unitary solutions with a zero pattern");
    search->add_option("--pattern", o.pattern, "rowell, block, diagonal, or a pattern file")->capture_default_str();
    search->add_option("--signature", o.signature, "d,m,l (default 2,3,1)");
    search->add_option("--restarts", o.restarts, "number of restarts (default 64)");
    search->add_option("--seed", o.seed, "random seed")->capture_default_str();
    search->add_option("--tol", o.tol, "residual target (default 1e-11)");
    search->add_option("--max-iter", o.max_iter, "iterations per restart")->capture_default_str();
    search->add_option("--param", o.param, "free-complex or unit-modulus")->capture_default_str();
    search->add_option("--threads", o.threads, "worker threads, 0 = all cores");

    app.add_subcommand("registry", "list named solutions");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitUsage;
    }

    const Command cmd(o, in, out);
    try {
        if (*verify) return cmd.verify();
        if (*family) return cmd.family();
        if (*classify) return cmd.classify();
        if (*equiv) return cmd.equiv();
        if (*braid) return cmd.braid();
        if (*search) return cmd.search();
        return cmd.registry();
    } catch (const RepresentationError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitFail;
    } catch (const ConvergenceError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitUsage;
    }
}

}  // namespace gybe
