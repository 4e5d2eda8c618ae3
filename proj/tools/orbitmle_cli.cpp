#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "orbitmle/io.hpp"
#include "orbitmle/matrix_normal.hpp"
#include "orbitmle/null_cone.hpp"
#include "orbitmle/tdag.hpp"

namespace {

using nlohmann::json;
using namespace orbitmle;

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured()) {
            std::cout << key << ": " << value.dump() << '\n';
        } else if (value.is_string()) {
            std::cout << key << ": " << value.get<std::string>() << '\n';
        } else {
            std::cout << key << ": " << value.dump() << '\n';
        }
    }
}

json report_json(const StabilityReport& report) {
    return to_json(report);
}

json dag_summary(const Dag& g) {
    json colliders = json::array();
    for (const auto& c : unshielded_colliders(g)) {
        colliders.push_back({c[0] + 1, c[1] + 1, c[2] + 1});
    }
    return json{{"nodes", g.node_count()},
                {"edges", g.edges().size()},
                {"transitive", is_transitive(g)},
                {"mlt", mlt_tdag(g)},
                {"unshielded_colliders", std::move(colliders)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum likelihood estimation for matrix normal and "
                 "transitive-DAG Gaussian models"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->envname("ORBITMLE_FORMAT");

    double tol = FlipFlopConfig{}.tol_residual;
    int max_iter = FlipFlopConfig{}.max_iter;
    int trials = kDefaultTrials;
    long entry_bound = kDefaultEntryBound;
    std::uint64_t seed = kDefaultSeed;
    bool use_exact = false;

    std::string tuple_path, graph_path, samples_path;
    int a = 0, b = 0, c = 0, d = 0, n = 1;
    int m1 = 0, m2 = 0, max_m1 = 10;

    auto add_flipflop_opts = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "Moment residual convergence tolerance")
            ->envname("ORBITMLE_TOL");
        cmd->add_option("--max-iter", max_iter, "Iteration budget")
            ->envname("ORBITMLE_MAX_ITER");
    };
    auto add_random_opts = [&](CLI::App* cmd) {
        cmd->add_option("--trials", trials, "Random trials per rank query")
            ->envname("ORBITMLE_TRIALS");
        cmd->add_option("--entry-bound", entry_bound, "Integer entries in [-B, B]")
            ->envname("ORBITMLE_ENTRY_BOUND");
        cmd->add_option("--seed", seed, "Random seed")->envname("ORBITMLE_SEED");
    };

    CLI::App* cmd_flipflop =
        app.add_subcommand("flipflop", "Run the flip-flop algorithm on a sample tuple");
    cmd_flipflop->add_option("tuple", tuple_path, "Sample tuple JSON file")->required();
    add_flipflop_opts(cmd_flipflop);

    CLI::App* cmd_classify =
        app.add_subcommand("classify", "Stability classification of a sample tuple");
    cmd_classify->add_option("tuple", tuple_path, "Sample tuple JSON file")->required();
    add_flipflop_opts(cmd_classify);

    CLI::App* cmd_moment =
        app.add_subcommand("moment", "Moment map residual of a sample tuple");
    cmd_moment->add_option("tuple", tuple_path, "Sample tuple JSON file")->required();

    CLI::App* cmd_stabdim =
        app.add_subcommand("stabdim", "Stabilizer Lie algebra dimension of a tuple");
    cmd_stabdim->add_option("tuple", tuple_path, "Sample tuple JSON file")->required();

    CLI::App* cmd_cp =
        app.add_subcommand("cp-rank", "Generic rank of a sum of n Kronecker products");
    cmd_cp->add_option("a", a, "Columns of the left factors")->required();
    cmd_cp->add_option("b", b, "Columns of the right factors")->required();
    cmd_cp->add_option("c", c, "Rows of the left factors")->required();
    cmd_cp->add_option("d", d, "Rows of the right factors")->required();
    cmd_cp->add_option("n", n, "Number of summands")->required();
    add_random_opts(cmd_cp);

    CLI::App* cmd_mlt =
        app.add_subcommand("mlt", "Maximum likelihood threshold of a matrix shape");
    cmd_mlt->add_option("m1", m1, "Row dimension")->required();
    cmd_mlt->add_option("m2", m2, "Column dimension")->required();
    add_random_opts(cmd_mlt);

    CLI::App* cmd_table =
        app.add_subcommand("mlt-table", "Threshold table for all shapes up to max_m1");
    cmd_table->add_option("max_m1", max_m1, "Largest row dimension");
    add_random_opts(cmd_table);

    CLI::App* cmd_tcheck = app.add_subcommand(
        "tdag-check", "MLE existence for a transitive-DAG model and sample matrix");
    cmd_tcheck->add_option("graph", graph_path, "Graph file")->required();
    cmd_tcheck->add_option("samples", samples_path, "Sample matrix file")->required();
    cmd_tcheck->add_flag("--exact", use_exact, "Rank tests over the rationals");

    CLI::App* cmd_tmle =
        app.add_subcommand("tdag-mle", "Exact MLE for a transitive-DAG model");
    cmd_tmle->add_option("graph", graph_path, "Graph file")->required();
    cmd_tmle->add_option("samples", samples_path, "Sample matrix file")->required();

    CLI::App* cmd_tana =
        app.add_subcommand("tdag-analyze", "Structural analysis of a DAG");
    cmd_tana->add_option("graph", graph_path, "Graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_flipflop || *cmd_classify) {
            SampleTuple y = load_sample_tuple(tuple_path);
            FlipFlopConfig cfg;
            cfg.tol_residual = tol;
            cfg.max_iter = max_iter;
            StabilityReport report = *cmd_classify ? classify(y, cfg) : flip_flop(y, cfg);
            emit(report_json(report), format);
        } else if (*cmd_moment) {
            SampleTuple y = load_sample_tuple(tuple_path);
            MomentResidual r = moment_residual(y);
            emit(json{{"residual", r.residual}, {"c1", r.c1}, {"c2", r.c2}}, format);
        } else if (*cmd_stabdim) {
            SampleTuple y = load_sample_tuple(tuple_path);
            emit(json{{"stabilizer_dim", stabilizer_lie_dim(y)}}, format);
        } else if (*cmd_cp) {
            CpRankQuery q;
            q.a = a;
            q.b = b;
            q.c = c;
            q.d = d;
            q.n = n;
            q.trials = trials;
            q.entry_bound = entry_bound;
            q.seed = seed;
            emit(json{{"rank", cp_rank(q)}, {"max_rank", std::min(a * b, c * d)}},
                 format);
        } else if (*cmd_mlt) {
            emit(to_json(mlt_bounds(m1, m2, trials, entry_bound, seed)), format);
        } else if (*cmd_table) {
            auto rows = mlt_table(max_m1, trials, entry_bound, seed);
            if (format == "json") {
                json out = json::array();
                for (const auto& r : rows) out.push_back(to_json(r));
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << format_mlt_table(rows);
            }
        } else if (*cmd_tcheck) {
            Dag g = load_dag(graph_path);
            Matrix samples = load_sample_matrix(samples_path);
            ExistenceResult ex = mle_exists(g, samples, use_exact);
            json j = dag_summary(g);
            j["n"] = samples.cols();
            j["mle_exists"] = ex.exists;
            j["likelihood"] = ex.exists ? "bounded, attained" : "unbounded";
            if (!ex.exists) j["witness_node"] = ex.witness_node + 1;
            if (samples.cols() >= mlt_tdag(g)) {
                j["null_cone_zariski_closed"] =
                    null_cone_zariski_closed(g, static_cast<int>(samples.cols()));
            }
            emit(j, format);
        } else if (*cmd_tmle) {
            Dag g = load_dag(graph_path);
            Matrix samples = load_sample_matrix(samples_path);
            ExistenceResult ex = mle_exists(g, samples);
            if (!ex.exists) {
                // unbounded likelihood is an outcome, not a usage error
                emit(json{{"mle_exists", false},
                          {"likelihood", "unbounded"},
                          {"witness_node", ex.witness_node + 1}},
                     format);
            } else {
                TdagMle mle = mle_tdag(g, samples);
                json j = to_json(mle);
                j["mle_exists"] = true;
                emit(j, format);
            }
        } else if (*cmd_tana) {
            Dag g = load_dag(graph_path);
            json j = dag_summary(g);
            if (is_transitive(g)) {
                j["null_cone_zariski_closed_at_mlt"] =
                    null_cone_zariski_closed(g, mlt_tdag(g));
            }
            emit(j, format);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
