#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "zdf/sim.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ZDF code simulator"};
    app.require_subcommand(1);

    zdf::sim::ExperimentConfig cfg;
    std::string t_a_text = "inf";
    cfg.out_dir = "out";

    CLI::App* sim = app.add_subcommand("sim", "Run Monte-Carlo decoding experiments");
    sim->set_config("--config")->description("key=value config file");
    sim->add_option("--n", cfg.n, "number of precoded packets (multiple of 10)");
    sim->add_option("--ell", cfg.ell, "packet length in bits");
    sim->add_option("--alpha", cfg.alphas, "overhead grid")->expected(-1)->delimiter(',');
    sim->add_option("--trials", cfg.trials, "trials per grid point");
    sim->add_option("--algo", cfg.algo, "original|scheduled|both");
    sim->add_option("--t-a", t_a_text, "stage-1 budget: <int>, 6/alpha or inf");
    sim->add_option("--t-b", cfg.t_b, "stage-2 budget");
    sim->add_option("--seed", cfg.seed, "master seed");
    sim->add_option("--workers", cfg.workers, "parallel trial workers");
    sim->add_option("--per-iteration", cfg.per_iteration_trial,
                    "trial id whose per-iteration counters are dumped");
    sim->add_option("--out", cfg.out_dir, "output directory");
    sim->add_option("--omega-preset", cfg.omega_preset, "degree distribution preset");
    sim->add_option("--delta-preset", cfg.delta_preset, "shift distribution preset");

    std::string plot_aggregate, plot_per_iteration, plot_out = "out";
    CLI::App* plot = app.add_subcommand("plot", "Reshape CSVs into gnuplot columns");
    plot->add_option("--aggregate", plot_aggregate, "aggregate CSV to reshape");
    plot->add_option("--per-iteration", plot_per_iteration, "per-iteration CSV to reshape");
    plot->add_option("--out", plot_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            cfg.t_a = zdf::sim::TaRule::parse(t_a_text);
            const auto rows = zdf::sim::run_experiment(cfg);
            for (const auto& r : rows) {
                std::cout << "alpha=" << r.alpha << " algo=" << r.algo << " der=" << r.der
                          << " mean_processes=" << r.mean_processes
                          << " mean_decode_ms=" << r.mean_decode_ms << '\n';
            }
            std::cout << "wrote " << cfg.out_dir << "/aggregate.csv\n";
        } else if (plot->parsed()) {
            if (plot_aggregate.empty() && plot_per_iteration.empty()) {
                std::cerr << "plot: need --aggregate and/or --per-iteration\n";
                return 1;
            }
            if (!plot_aggregate.empty()) {
                std::ifstream in(plot_aggregate);
                if (!in) throw std::runtime_error("cannot open " + plot_aggregate);
                zdf::sim::emit_plotdata(in, plot_out);
            }
            if (!plot_per_iteration.empty()) {
                std::ifstream in(plot_per_iteration);
                if (!in) throw std::runtime_error("cannot open " + plot_per_iteration);
                std::ofstream out(plot_out + "/per_iteration.dat");
                zdf::sim::emit_iteration_plotdata(in, out);
            }
            std::cout << "wrote plot data under " << plot_out << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
