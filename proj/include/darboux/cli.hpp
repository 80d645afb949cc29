/*
   Copyright 2026 The darboux-workbench authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "integrability.hpp"
#include "parse.hpp"

namespace darboux::cli {

using json = nlohmann::ordered_json;

// Exit codes: 0 ok, 1 negative mathematical result, 2 usage/parse error,
// 3 resource cap exceeded.
enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct Report {
    std::string command;
    std::string system_name;
    std::string status;  // ok | no_solution | error
    json payload = json::object();
    std::vector<std::string> diagnostics;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json rat_strings(const std::vector<Rat>& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(to_string(r));
    return a;
}

inline json rat_matrix_strings(const std::vector<std::vector<Rat>>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(rat_strings(v));
    return a;
}

inline void emit(const Report& r, bool as_json, std::ostream& out) {
    if (as_json) {
        json doc;
        doc["status"] = r.status;
        doc["system"] = r.system_name;
        doc["command"] = r.command;
        doc["payload"] = r.payload;
        doc["diagnostics"] = r.diagnostics;
        out << doc.dump(2) << "\n";
        return;
    }
    out << "command: " << r.command << "\n";
    out << "system: " << r.system_name << "\n";
    out << "status: " << r.status << "\n";
    for (const auto& [key, value] : r.payload.items()) {
        if (value.is_string())
            out << key << ": " << value.get<std::string>() << "\n";
        else
            out << key << ": " << value.dump() << "\n";
    }
    for (const std::string& d : r.diagnostics) out << "note: " << d << "\n";
}

inline json pairs_json(const std::vector<DarbouxPair>& pairs) {
    json a = json::array();
    for (const DarbouxPair& p : pairs)
        a.push_back(json{{"poly", p.f.to_string()}, {"cofactor", p.k.to_string()}});
    return a;
}

inline std::vector<DarbouxPair> load_pairs(const std::string& path, const VectorField& X,
                                           const SystemSpec& spec) {
    const auto raw = parse_pairs(read_file(path), spec.variables, spec.parameters);
    std::vector<DarbouxPair> pairs;
    for (const auto& [f, k] : raw) {
        if (f.is_constant())
            throw std::invalid_argument("pair polynomial must be nonconstant: " + f.to_string());
        if (!is_darboux_pair(X, f, k))
            throw std::invalid_argument("pair fails verification: X(" + f.to_string() + ") != (" +
                                        k.to_string() + ")*(" + f.to_string() + ")");
        pairs.push_back(DarbouxPair{f, k});
    }
    return pairs;
}

inline json search_report_json(const SearchReport& rep) {
    json hits = json::array();
    for (const CofactorHit& h : rep.hits) {
        json kernel = json::array();
        json degrees = json::array();
        for (const Poly& f : h.kernel) {
            kernel.push_back(f.to_string());
            degrees.push_back(f.total_degree());
        }
        hits.push_back(json{{"cofactor", to_string(h.cofactor)},
                            {"kernel", kernel},
                            {"degrees", degrees}});
    }
    return json{{"mode", "constant"},
                {"degree", rep.degree_bound},
                {"hits", hits},
                {"spectrum_remainder_degree", rep.spectrum_remainder_degree},
                {"empty_candidates", rat_strings(rep.empty_candidates)}};
}

inline json multiplier_json(const MultiplierCertificate& cert) {
    json j;
    j["exponents"] = rat_strings(cert.exponents);
    j["pairs"] = pairs_json(cert.pairs);
    j["multiplier"] = cert.multiplier ? json(cert.multiplier->to_string()) : json(nullptr);
    j["residual_checked"] = cert.residual_checked;
    j["integral_directions"] = rat_matrix_strings(cert.integral_directions);
    return j;
}

inline json certificates_json(const std::vector<FirstIntegralCertificate>& certs) {
    json a = json::array();
    for (const FirstIntegralCertificate& c : certs) {
        json terms = json::array();
        for (std::size_t i = 0; i < c.pairs.size(); ++i) {
            if (c.lambdas[i] == 0) continue;
            terms.push_back(json{{"coeff", to_string(c.lambdas[i])},
                                 {"poly", c.pairs[i].f.to_string()}});
        }
        a.push_back(json{{"lambdas", rat_strings(c.lambdas)}, {"log_terms", terms}});
    }
    return a;
}

}  // namespace detail

// Runs one CLI invocation; writes the report to `out`, fatal diagnostics to
// `err`, and returns the process exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"Exact-arithmetic workbench for Darboux and elementary integrability of "
                 "polynomial vector fields"};
    app.require_subcommand(1);

    std::string system_path, poly_expr, pairs_path, w0_expr, cofactor_expr;
    std::vector<std::string> log_specs, w_exprs, integral_exprs;
    unsigned degree = 1;
    bool constant_mode = false;
    bool as_json = false;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--system", system_path, "vector-field description file (.vf)")
            ->required();
        sub->add_flag("--json", as_json, "machine-readable JSON report");
        sub->add_option("--seed", seed, "seed for randomized checks (default 0)");
    };

    CLI::App* verify = app.add_subcommand("verify-darboux", "verify a Darboux polynomial");
    add_common(verify);
    verify->add_option("--poly", poly_expr, "candidate polynomial")->required();

    CLI::App* search = app.add_subcommand("search-darboux", "search for Darboux polynomials");
    add_common(search);
    search->add_option("--degree", degree, "degree bound")->required();
    search->add_option("--cofactor", cofactor_expr, "fixed cofactor expression");
    search->add_flag("--constant", constant_mode, "search all constant cofactors");

    CLI::App* mult = app.add_subcommand("multiplier", "synthesize a Jacobian multiplier");
    add_common(mult);
    mult->add_option("--pairs", pairs_path, "pairs file: lines 'EXPR ; EXPR'")->required();

    CLI::App* fints = app.add_subcommand("first-integrals", "Darboux first integrals from pairs");
    add_common(fints);
    fints->add_option("--pairs", pairs_path, "pairs file: lines 'EXPR ; EXPR'")->required();

    CLI::App* vint = app.add_subcommand("verify-integral",
                                        "verify w0 + sum c_i ln w_i as a first integral");
    add_common(vint);
    vint->add_option("--w0", w0_expr, "algebraic part (rational function)")->required();
    vint->add_option("--log", log_specs, "log term C:EXPR (repeatable)");

    CLI::App* slc = app.add_subcommand("solve-log-coeffs", "solve for log coefficients");
    add_common(slc);
    slc->add_option("--w0", w0_expr, "algebraic part (rational function)")->required();
    slc->add_option("--w", w_exprs, "log argument (repeatable)")->required();

    CLI::App* cramer = app.add_subcommand("cramer",
                                          "reconstruct the multiplier from n-1 first integrals");
    add_common(cramer);
    cramer->add_option("--integral", integral_exprs, "rational first integral (repeatable)")
        ->required();

    CLI::App* full = app.add_subcommand("report", "full pipeline report (JSON)");
    add_common(full);
    full->add_option("--degree", degree, "degree bound for the Darboux search")->required();

    std::vector<const char*> argv;
    argv.push_back("darboux");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        const SystemSpec spec = parse_system(detail::read_file(system_path));
        const VectorField& X = spec.field;
        Report rep;
        rep.system_name = spec.name;
        rep.status = "ok";

        if (app.got_subcommand(verify)) {
            rep.command = "verify-darboux";
            const Poly f = parse_poly(poly_expr, spec.variables, spec.parameters);
            const auto pair = verify_darboux(X, f);
            rep.payload["poly"] = f.to_string();
            if (pair) {
                rep.payload["cofactor"] = pair->k.to_string();
                detail::emit(rep, as_json, out);
                return kOk;
            }
            rep.status = "no_solution";
            rep.diagnostics.push_back("NotDarboux: X(f) is not a polynomial multiple of f");
            detail::emit(rep, as_json, out);
            return kNegative;
        }

        if (app.got_subcommand(search)) {
            rep.command = "search-darboux";
            if (constant_mode && !cofactor_expr.empty())
                throw std::invalid_argument("--constant and --cofactor are exclusive");
            if (!constant_mode && cofactor_expr.empty())
                throw std::invalid_argument("one of --constant or --cofactor is required");
            if (constant_mode) {
                const SearchReport result = search_constant_cofactor(X, degree);
                rep.payload = detail::search_report_json(result);
            } else {
                const Poly k = parse_poly(cofactor_expr, spec.variables, spec.parameters);
                const auto kernel = search_given_cofactor(X, k, degree);
                json kj = json::array(), dj = json::array();
                for (const Poly& f : kernel) {
                    kj.push_back(f.to_string());
                    dj.push_back(f.total_degree());
                }
                rep.payload = json{{"mode", "given-cofactor"},
                                   {"degree", degree},
                                   {"cofactor", k.to_string()},
                                   {"kernel", kj},
                                   {"degrees", dj}};
            }
            detail::emit(rep, as_json, out);
            return kOk;
        }

        if (app.got_subcommand(mult)) {
            rep.command = "multiplier";
            const auto pairs = detail::load_pairs(pairs_path, X, spec);
            auto result = multiplier_exponents(pairs, X);
            if (std::holds_alternative<NoSolutionInfo>(result)) {
                rep.status = "no_solution";
                rep.diagnostics.push_back("NoSolution: " +
                                          std::get<NoSolutionInfo>(result).detail);
                detail::emit(rep, as_json, out);
                return kNegative;
            }
            rep.payload = detail::multiplier_json(std::get<MultiplierCertificate>(result));
            detail::emit(rep, as_json, out);
            return kOk;
        }

        if (app.got_subcommand(fints)) {
            rep.command = "first-integrals";
            const auto pairs = detail::load_pairs(pairs_path, X, spec);
            const auto certs = first_integral_exponents(X, pairs);
            rep.payload["certificates"] = detail::certificates_json(certs);
            detail::emit(rep, as_json, out);
            return kOk;
        }

        if (app.got_subcommand(vint)) {
            rep.command = "verify-integral";
            ElementaryIntegralExpr expr;
            expr.w0 = parse_ratfunc(w0_expr, spec.variables, spec.parameters);
            json terms = json::array();
            for (const std::string& spec_str : log_specs) {
                const auto colon = spec_str.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("--log expects C:EXPR, got '" + spec_str + "'");
                Rat c;
                try {
                    c = Rat(spec_str.substr(0, colon));
                } catch (const std::exception&) {
                    throw std::invalid_argument("invalid log coefficient in '" + spec_str + "'");
                }
                const RatFunc w =
                    parse_ratfunc(spec_str.substr(colon + 1), spec.variables, spec.parameters);
                if (w.is_zero()) throw std::invalid_argument("zero log argument");
                terms.push_back(json{{"c", to_string(c)}, {"w", w.to_string()}});
                expr.terms.push_back(LogTerm{c, w});
            }
            const bool verdict = verify_elementary_first_integral(X, expr);
            rep.payload["w0"] = expr.w0.to_string();
            rep.payload["terms"] = terms;
            rep.payload["verdict"] = verdict;
            if (!verdict) rep.status = "no_solution";
            detail::emit(rep, as_json, out);
            return verdict ? kOk : kNegative;
        }

        if (app.got_subcommand(slc)) {
            rep.command = "solve-log-coeffs";
            const RatFunc w0 = parse_ratfunc(w0_expr, spec.variables, spec.parameters);
            std::vector<RatFunc> ws;
            for (const std::string& s : w_exprs)
                ws.push_back(parse_ratfunc(s, spec.variables, spec.parameters));
            const auto sol = solve_log_coefficients(X, w0, ws);
            if (!sol) {
                rep.status = "no_solution";
                rep.diagnostics.push_back("NoSolution: the log-coefficient system is inconsistent");
                detail::emit(rep, as_json, out);
                return kNegative;
            }
            rep.payload["particular"] = detail::rat_strings(sol->particular);
            rep.payload["homogeneous"] = detail::rat_matrix_strings(sol->homogeneous);
            detail::emit(rep, as_json, out);
            return kOk;
        }

        if (app.got_subcommand(cramer)) {
            rep.command = "cramer";
            std::vector<RatFunc> H;
            for (const std::string& s : integral_exprs)
                H.push_back(parse_ratfunc(s, spec.variables, spec.parameters));
            auto result = cramer_multiplier(X, H, seed);
            if (std::holds_alternative<DegenerateInput>(result)) {
                rep.status = "no_solution";
                const auto& deg = std::get<DegenerateInput>(result);
                rep.diagnostics.push_back("DegenerateInput: every pivot yields Lambda = 0");
                rep.diagnostics.push_back(
                    deg.independence.independent
                        ? "independence test: Independent (unexpected)"
                        : "independence test: ProbablyDependent");
                detail::emit(rep, as_json, out);
                return kNegative;
            }
            const CramerData& data = std::get<CramerData>(result);
            json lambdas = json::array();
            for (const RatFunc& l : data.Lambdas) lambdas.push_back(l.to_string());
            rep.payload["pivot"] = (*spec.variables)[data.pivot];
            rep.payload["Lambda"] = data.Lambda.to_string();
            rep.payload["Lambdas"] = lambdas;
            rep.payload["h"] = data.h.to_string();
            rep.payload["J"] = data.J.to_string();
            rep.payload["constant_warning"] = data.constant_warning;
            if (data.constant_warning)
                rep.diagnostics.push_back("ConstantWarning: J is constant (divergence-free case)");
            detail::emit(rep, as_json, out);
            return kOk;
        }

        if (app.got_subcommand(full)) {
            rep.command = "report";
            const SearchReport result = search_constant_cofactor(X, degree);
            rep.payload["search"] = detail::search_report_json(result);
            std::vector<DarbouxPair> pairs;
            for (const CofactorHit& h : result.hits)
                for (const Poly& f : h.kernel)
                    pairs.push_back(DarbouxPair{f, Poly::constant(X.ctx, h.cofactor)});
            if (pairs.empty()) {
                rep.payload["multiplier"] = json{{"skipped", "no Darboux pairs found"}};
            } else {
                auto mres = multiplier_exponents(pairs, X);
                if (std::holds_alternative<MultiplierCertificate>(mres))
                    rep.payload["multiplier"] =
                        detail::multiplier_json(std::get<MultiplierCertificate>(mres));
                else
                    rep.payload["multiplier"] =
                        json{{"no_solution", std::get<NoSolutionInfo>(mres).detail}};
            }
            rep.payload["first_integrals"] =
                json{{"certificates", detail::certificates_json(
                                          first_integral_exponents(X, pairs))}};
            detail::emit(rep, /*as_json=*/true, out);
            return kOk;
        }

        err << "error: no subcommand\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kResource;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace darboux::cli
