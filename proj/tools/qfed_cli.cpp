// qfed: evaluate densities of states, photon numbers, effective temperatures and
// energy flow for planar layer stacks on a (z, K, photon energy) grid.

#include "qfed/errors.hpp"
#include "qfed/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { ok = 0, failure = 1, invalid = 2, numeric = 3 };

int report_run(const qfed::ResultGrid& grid, const std::string& out, bool render)
{
    const auto files = qfed::write_results(grid, out, render);
    std::cout << "wrote " << files.size() << " files to " << out << "\n";
    if (grid.floor_applied)
        std::cout << "loss floor " << grid.loss_floor << " applied to nominally lossless layers\n";
    if (!grid.nudged.empty())
        std::cout << grid.nudged.size() << " (K, energy) columns nudged off a light line\n";
    if (!grid.aborted.empty()) {
        std::cerr << grid.aborted.size() << " samples aborted; first: z = " << grid.aborted[0].z
                  << " nm, K = " << grid.aborted[0].K << " nm^-1, E = " << grid.aborted[0].energy
                  << " eV: " << grid.aborted[0].message << "\n";
        return numeric;
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"qfed - fluctuational electrodynamics for planar stacks"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "cap on worker threads (0: scenario setting)");

    std::string run_file, run_out;
    bool run_render = false;
    auto* run_cmd = app.add_subcommand("run", "evaluate a scenario file");
    run_cmd->add_option("scenario", run_file)->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", run_out, "output directory")->required();
    run_cmd->add_flag("--render", run_render, "also write PPM heat maps");
    run_cmd->add_option("--threads", threads, "cap on worker threads");

    std::string val_file;
    auto* val_cmd = app.add_subcommand("validate", "check a scenario file without running it");
    val_cmd->add_option("scenario", val_file)->required()->check(CLI::ExistingFile);

    std::string demo_case = "biased", demo_out;
    bool demo_render = false;
    auto* demo_cmd = app.add_subcommand("demo", "run the bundled Ag/GaN/InGaN emitter");
    demo_cmd->add_option("--case", demo_case, "thermal or biased")
        ->check(CLI::IsMember({"thermal", "biased"}));
    demo_cmd->add_option("--out", demo_out, "output directory")->required();
    demo_cmd->add_flag("--render", demo_render, "also write PPM heat maps");
    demo_cmd->add_option("--threads", threads, "cap on worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*val_cmd) {
            auto sc = qfed::load_scenario(val_file);
            std::cout << val_file << ": ok (" << sc.stack->layer_count() << " layers, "
                      << sc.z.size() << " x " << sc.k.size() << " x " << sc.energy.size()
                      << " samples)\n";
            return ok;
        }
        if (*run_cmd) {
            auto sc = qfed::load_scenario(run_file);
            return report_run(qfed::run(sc, threads), run_out, run_render);
        }
        auto sc = qfed::demo_scenario(demo_case == "thermal" ? qfed::DemoCase::thermal
                                                             : qfed::DemoCase::biased);
        return report_run(qfed::run(sc, threads), demo_out, demo_render);
    } catch (const qfed::ValidationError& e) {
        for (const auto& p : e.problems())
            std::cerr << "error: " << p << "\n";
        return invalid;
    } catch (const qfed::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
}
