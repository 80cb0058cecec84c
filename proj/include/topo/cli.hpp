#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topo/continuity.hpp"
#include "topo/enumerate.hpp"
#include "topo/errors.hpp"
#include "topo/extension.hpp"
#include "topo/io.hpp"
#include "topo/sweep.hpp"

namespace topo {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::syntax_error, "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::syntax_error, "cannot write " + path);
    out << text;
}

inline std::vector<int> parse_point_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        try {
            std::size_t used = 0;
            int value = std::stoi(token, &used);
            if (used != token.size() || value < 0)
                fail(ErrorCode::syntax_error, "bad point id \"" + token + "\"");
            out.push_back(value);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(ErrorCode::syntax_error, "bad point id \"" + token + "\"");
        }
    }
    return out;
}

inline const SpaceDoc& as_space(const Document& doc) {
    if (const auto* sp = std::get_if<SpaceDoc>(&doc)) return *sp;
    fail(ErrorCode::unsupported_kind, "this command needs a space document");
}

inline const InstanceDoc& as_instance(const Document& doc) {
    if (const auto* inst = std::get_if<InstanceDoc>(&doc)) return *inst;
    fail(ErrorCode::unsupported_kind, "this command needs an instance document");
}

inline ojson witness_json(const std::optional<ContinuityWitness>& witness,
                          const std::vector<int>* to_parent) {
    if (!witness) return nullptr;
    ojson j;
    int point = witness->point;
    if (to_parent != nullptr) point = (*to_parent)[static_cast<std::size_t>(point)];
    j["point"] = point;
    j["hull_top"] = points_json(witness->hull_top);
    j["image"] = points_json(witness->image);
    return j;
}

inline std::string summary_text(const VerificationReport& report) {
    std::ostringstream out;
    out << "check: " << report.check << "\n";
    out << "parameters:";
    for (const auto& [k, v] : report.parameters) out << " " << k << "=" << v;
    out << "\ncounts:";
    for (const auto& [k, v] : report.counts) out << " " << k << "=" << v;
    out << "\nresult: " << (report.pass() ? "PASS" : "FAIL") << " ("
        << report.discrepancies.size() << " discrepancies)\n";
    out << "elapsed: " << report.elapsed_seconds << " s\n";
    return out.str();
}

struct OutputSink {
    std::optional<std::string> path;
    std::ostream* stream = nullptr;

    void write(const std::string& text) const {
        if (path) {
            write_file(*path, text);
        } else {
            *stream << text;
        }
    }
};

inline int emit_report(const VerificationReport& report, const std::vector<GapResult>* gaps,
                       bool summary, const OutputSink& sink, std::ostream& out) {
    std::string text = canonical_text(report_to_json(report, gaps));
    if (sink.path) {
        sink.write(text);
        if (summary) out << summary_text(report);
    } else if (summary) {
        out << summary_text(report);
    } else {
        out << text;
    }
    return report.pass() ? 0 : 1;
}

}  // namespace cli_detail

/// Command-line front end. Returns the process exit code: 0 when the
/// requested property holds or the command succeeded, 1 when a checked
/// property fails or a sweep reports discrepancies, 2 on usage or input
/// errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using cli_detail::OutputSink;

    CLI::App app{"finite-space continuity and dense-extension toolkit"};
    app.require_subcommand(1);

    int jobs = 1;
    bool summary = false;
    std::string output_path;
    app.add_option("--jobs", jobs, "worker count for sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--summary", summary, "print a human-readable summary");
    app.add_option("-o,--output", output_path, "write the result to a file");

    bool size_override = false;
    if (const char* env = std::getenv("TOPO_SIZE_OVERRIDE"))
        size_override = std::string(env) == "1";

    auto sink = [&]() {
        OutputSink s;
        if (!output_path.empty()) s.path = output_path;
        s.stream = &out;
        return s;
    };
    auto sweep_options = [&]() {
        SweepOptions o;
        o.jobs = jobs;
        o.size_override = size_override;
        return o;
    };

    // count topologies
    auto* count_cmd = app.add_subcommand("count", "count combinatorial families");
    count_cmd->fallthrough();
    count_cmd->require_subcommand(1);
    auto* count_top = count_cmd->add_subcommand("topologies", "count topologies on n points");
    count_top->fallthrough();
    int count_n = 0;
    bool count_t0 = false;
    count_top->add_option("--n", count_n, "point count")->required();
    count_top->add_flag("--t0", count_t0, "skip spaces with indistinguishable points");
    count_top->callback([&] {
        long long n = count_topologies(count_n, count_t0, size_override);
        sink().write(std::to_string(n) + "\n");
    });

    // closure
    auto* closure_cmd = app.add_subcommand("closure", "closure of a set in a space");
    closure_cmd->fallthrough();
    std::string closure_file, closure_set;
    int closure_theta = -1;
    bool closure_classical = false;
    closure_cmd->add_option("file", closure_file, "space document")->required();
    closure_cmd->add_option("--set", closure_set, "comma-separated point ids")->required();
    auto* theta_opt =
        closure_cmd->add_option("--theta", closure_theta, "level of the theta-closure");
    closure_cmd->add_flag("--classical", closure_classical, "all-neighbourhood theta-closure")
        ->excludes(theta_opt);
    closure_cmd->callback([&] {
        Document parsed = parse_document(cli_detail::read_file(closure_file));
        const SpaceDoc& doc = cli_detail::as_space(parsed);
        PointSet a = PointSet::from_points(doc.space.size(),
                                           cli_detail::parse_point_list(closure_set));
        PointSet result = closure_classical ? classical_theta_closure(doc.space, a)
                          : closure_theta >= 0 ? theta_closure(doc.space, a, closure_theta)
                                               : doc.space.closure(a);
        sink().write(canonical_text(points_json(result)));
    });

    // hulls
    auto* hulls_cmd = app.add_subcommand("hulls", "hull tops of a set in a space");
    hulls_cmd->fallthrough();
    std::string hulls_file, hulls_set;
    int hulls_alpha = 0;
    bool hulls_minimal = false;
    hulls_cmd->add_option("file", hulls_file, "space document")->required();
    hulls_cmd->add_option("--set", hulls_set, "comma-separated point ids")->required();
    hulls_cmd->add_option("--alpha", hulls_alpha, "hull level")->required();
    hulls_cmd->add_flag("--minimal", hulls_minimal, "inclusion-minimal tops only");
    hulls_cmd->callback([&] {
        Document parsed = parse_document(cli_detail::read_file(hulls_file));
        const SpaceDoc& doc = cli_detail::as_space(parsed);
        PointSet a =
            PointSet::from_points(doc.space.size(), cli_detail::parse_point_list(hulls_set));
        ojson arr = ojson::array();
        for (const PointSet& top : hull_tops(doc.space, a, hulls_alpha, hulls_minimal))
            arr.push_back(points_json(top));
        sink().write(canonical_text(arr));
    });

    // check-map
    auto* check_cmd = app.add_subcommand("check-map", "check a continuity property");
    check_cmd->fallthrough();
    std::string check_file, check_map_file, check_criterion = "definition";
    int check_alpha = 1;
    bool check_literal0 = false;
    check_cmd->add_option("file", check_file, "instance document")->required();
    check_cmd->add_option("--alpha", check_alpha, "level for definition/closure criteria");
    check_cmd
        ->add_option("--criterion", check_criterion,
                     "definition | closure | classical | continuous")
        ->check(CLI::IsMember({"definition", "closure", "classical", "continuous"}));
    check_cmd->add_option("--map", check_map_file,
                          "check this total extension instead of the base map on S");
    check_cmd->add_flag("--literal-alpha0", check_literal0,
                        "diagnostic: read level 0 as hull-quantified instead of plain continuity");
    int check_exit = 0;
    check_cmd->callback([&] {
        Document parsed = parse_document(cli_detail::read_file(check_file));
        const InstanceDoc& doc = cli_detail::as_instance(parsed);
        const ExtensionInstance& inst = doc.instance;

        std::optional<TotalMap> map;
        std::vector<int> to_parent;
        const std::vector<int>* remap = nullptr;
        if (!check_map_file.empty()) {
            Document raw = parse_document(cli_detail::read_file(check_map_file));
            const auto* map_doc = std::get_if<MapDoc>(&raw);
            if (map_doc == nullptr)
                fail(ErrorCode::unsupported_kind, "--map needs a map document");
            map.emplace(inst.source_ref(), inst.target_ref(), map_doc->assignment);
        } else {
            Subspace sub = subspace_topology(inst.source(), inst.dense_set());
            std::vector<int> induced(static_cast<std::size_t>(sub.space.size()));
            for (int i = 0; i < sub.space.size(); ++i)
                induced[static_cast<std::size_t>(i)] =
                    inst.partial_map()(sub.to_parent[static_cast<std::size_t>(i)]);
            map.emplace(make_space(std::move(sub.space)), inst.target_ref(), std::move(induced));
            to_parent = std::move(sub.to_parent);
            remap = &to_parent;
        }

        ojson verdict;
        verdict["criterion"] = check_criterion;
        if (check_criterion == "definition") {
            verdict["alpha"] = check_alpha;
            Verdict v = check_theta_continuous(
                *map, check_alpha,
                check_literal0 ? Alpha0Rule::literal_hulls : Alpha0Rule::continuity);
            verdict["holds"] = v.holds;
            verdict["witness"] = cli_detail::witness_json(v.witness, remap);
            check_exit = v.holds ? 0 : 1;
        } else if (check_criterion == "closure") {
            verdict["alpha"] = check_alpha;
            bool holds = closure_criterion(*map, check_alpha);
            verdict["holds"] = holds;
            verdict["witness"] = nullptr;
            check_exit = holds ? 0 : 1;
        } else if (check_criterion == "classical") {
            Verdict v = check_classical_weakly_continuous(*map);
            verdict["holds"] = v.holds;
            verdict["witness"] = cli_detail::witness_json(v.witness, remap);
            check_exit = v.holds ? 0 : 1;
        } else {
            bool holds = is_continuous(*map);
            verdict["holds"] = holds;
            verdict["witness"] = nullptr;
            check_exit = holds ? 0 : 1;
        }
        sink().write(canonical_text(verdict));
    });

    // conditions
    auto* cond_cmd = app.add_subcommand("conditions", "evaluate the extension condition sets");
    cond_cmd->fallthrough();
    std::string cond_file;
    cond_cmd->add_option("file", cond_file, "instance document")->required();
    cond_cmd->callback([&] {
        Document parsed = parse_document(cli_detail::read_file(cond_file));
        const InstanceDoc& doc = cli_detail::as_instance(parsed);
        ConditionReport report = check_conditions(doc.instance);
        ojson j;
        j["sufficient"] = report.sufficient_holds;
        j["necessary"] = report.necessary_holds;
        ojson points = ojson::array();
        for (int x = 0; x < doc.instance.source().size(); ++x) {
            ojson p;
            p["point"] = x;
            p["in_S"] = doc.instance.dense_set().contains(x);
            p["closure_set"] = points_json(report.closure_sets[static_cast<std::size_t>(x)]);
            p["theta_set"] = points_json(report.theta_sets[static_cast<std::size_t>(x)]);
            points.push_back(std::move(p));
        }
        j["points"] = std::move(points);
        sink().write(canonical_text(j));
    });

    // extend
    auto* extend_cmd = app.add_subcommand("extend", "construct an extension");
    extend_cmd->fallthrough();
    std::string extend_file, extend_mode = "exact", extend_tie = "min";
    extend_cmd->add_option("file", extend_file, "instance document")->required();
    extend_cmd->add_option("--mode", extend_mode, "exact | approximate")
        ->check(CLI::IsMember({"exact", "approximate"}));
    extend_cmd->add_option("--tie-break", extend_tie, "min | max")
        ->check(CLI::IsMember({"min", "max"}));
    extend_cmd->callback([&] {
        Document parsed = parse_document(cli_detail::read_file(extend_file));
        const InstanceDoc& doc = cli_detail::as_instance(parsed);
        TieBreak tie = extend_tie == "min" ? TieBreak::min : TieBreak::max;
        TotalMap f = extend_mode == "exact" ? construct_extension(doc.instance, tie)
                                            : approximate_map(doc.instance, tie);
        sink().write(canonical_text(map_to_json(f.assignment())));
    });

    // brute
    auto* brute_cmd = app.add_subcommand("brute", "decide existence by exhaustion");
    brute_cmd->fallthrough();
    std::string brute_file;
    int brute_alpha = 1;
    int brute_exit = 0;
    brute_cmd->add_option("file", brute_file, "instance document")->required();
    brute_cmd->add_option("--alpha", brute_alpha, "continuity level");
    brute_cmd->callback([&] {
        Document parsed = parse_document(cli_detail::read_file(brute_file));
        const InstanceDoc& doc = cli_detail::as_instance(parsed);
        ExistenceResult result = brute_force_existence(doc.instance, brute_alpha);
        ojson j;
        j["alpha"] = brute_alpha;
        j["candidates"] = result.candidates;
        j["exists"] = result.exists;
        j["witness"] = result.witness ? ojson(result.witness->assignment()) : ojson(nullptr);
        sink().write(canonical_text(j));
        brute_exit = result.exists ? 0 : 1;
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "exhaustive sweeps");
    verify_cmd->fallthrough();
    verify_cmd->require_subcommand(1);
    int nx = 3, ny = 3, alpha_max = 2;
    int verify_exit = 0;

    auto* lemma_cmd = verify_cmd->add_subcommand(
        "lemma1", "hull checker vs closure criterion on all maps");
    lemma_cmd->fallthrough();
    lemma_cmd->add_option("--nx", nx, "source size")->required();
    lemma_cmd->add_option("--ny", ny, "target size")->required();
    lemma_cmd->add_option("--alpha-max", alpha_max, "highest level checked");
    lemma_cmd->callback([&] {
        VerificationReport report =
            verify_continuity_equivalence(nx, ny, alpha_max, sweep_options());
        verify_exit = cli_detail::emit_report(report, nullptr, summary, sink(), out);
    });

    auto* theorem_cmd = verify_cmd->add_subcommand(
        "theorem1", "extension conditions over all instances");
    theorem_cmd->fallthrough();
    theorem_cmd->add_option("--nx", nx, "largest source size")->required();
    theorem_cmd->add_option("--ny", ny, "largest target size")->required();
    theorem_cmd->callback([&] {
        VerificationReport report = verify_extension_conditions(nx, ny, sweep_options());
        verify_exit = cli_detail::emit_report(report, nullptr, summary, sink(), out);
    });

    auto* corollary_cmd = verify_cmd->add_subcommand(
        "corollary", "closure condition vs continuous extension for regular targets");
    corollary_cmd->fallthrough();
    corollary_cmd->add_option("--nx", nx, "largest source size")->required();
    corollary_cmd->add_option("--ny", ny, "largest target size")->required();
    corollary_cmd->callback([&] {
        VerificationReport report = verify_regular_extension(nx, ny, sweep_options());
        verify_exit = cli_detail::emit_report(report, nullptr, summary, sink(), out);
    });

    // mine gaps
    auto* mine_cmd = app.add_subcommand("mine", "search for witnesses");
    mine_cmd->fallthrough();
    mine_cmd->require_subcommand(1);
    auto* gaps_cmd = mine_cmd->add_subcommand(
        "gaps", "instances where the closure condition fails but an extension exists");
    gaps_cmd->fallthrough();
    gaps_cmd->add_option("--nx", nx, "largest source size")->required();
    gaps_cmd->add_option("--ny", ny, "largest target size")->required();
    gaps_cmd->callback([&] {
        MineResult result = mine_gaps(nx, ny, sweep_options());
        verify_exit = cli_detail::emit_report(result.report, &result.gaps, summary, sink(), out);
    });

    // dot
    auto* dot_cmd = app.add_subcommand("dot", "render a document as a DOT digraph");
    dot_cmd->fallthrough();
    std::string dot_file, dot_map_file;
    dot_cmd->add_option("file", dot_file, "space or instance document")->required();
    dot_cmd->add_option("--map", dot_map_file, "overlay this extension on an instance");
    dot_cmd->callback([&] {
        Document doc = parse_document(cli_detail::read_file(dot_file));
        std::string text;
        if (!dot_map_file.empty()) {
            const InstanceDoc& inst_doc = cli_detail::as_instance(doc);
            Document map_doc = parse_document(cli_detail::read_file(dot_map_file));
            const auto* map = std::get_if<MapDoc>(&map_doc);
            if (map == nullptr) fail(ErrorCode::unsupported_kind, "--map needs a map document");
            TotalMap f(inst_doc.instance.source_ref(), inst_doc.instance.target_ref(),
                       map->assignment);
            text = emit_dot(inst_doc, &f);
        } else {
            text = emit_dot(doc);
        }
        sink().write(text);
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // Normalize all usage failures to exit code 2 (0 stays 0 for help).
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::condition_failed ||
                       e.code() == ErrorCode::no_continuous_extension
                   ? 1
                   : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return check_exit != 0 ? check_exit : (brute_exit != 0 ? brute_exit : verify_exit);
}

}  // namespace topo
