#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <karamata/builtins.hpp>
#include <karamata/config.hpp>

namespace {

int run(const std::string& target, const std::string& out_dir, const karamata::RunOverrides& ov) {
    using namespace karamata;
    ExperimentConfig cfg;
    if (std::filesystem::is_regular_file(target)) {
        cfg = load_config(target);
    } else if (auto* b = find_builtin(target)) {
        cfg = parse_config(std::string(b->text), "builtin:" + std::string(b->name));
    } else {
        throw input_error("no config file or builtin named '" + target + "'");
    }
    std::string dir = !out_dir.empty() ? out_dir : !cfg.output_dir.empty() ? cfg.output_dir : "out";
    auto rep = run_experiment(cfg, ov);
    for (auto& p : write_report(rep, dir)) std::cout << "wrote " << p.string() << "\n";
    std::cout << rep.name << " (criterion " << rep.criterion << "): " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"karamata: proximate orders, Azarin limit sets and Mellin-convolution Tauberian checks"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run a config file or a builtin by name");
    std::string target, out_dir;
    double tol = 0.0;
    int max_window = 0;
    run_cmd->add_option("config", target, "config path or builtin name")->required();
    run_cmd->add_option("--out-dir", out_dir, "directory for the JSON report and CSV tables");
    auto* tol_opt = run_cmd->add_option("--tol-override", tol, "replace the operation's primary tolerance");
    auto* win_opt = run_cmd->add_option("--max-window", max_window, "cap on window expansions of improper integrals");

    auto* list_cmd = app.add_subcommand("list-builtins", "print the builtin registry");
    auto* show_cmd = app.add_subcommand("show-builtin", "print a builtin config");
    std::string show_name;
    show_cmd->add_option("name", show_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*list_cmd) {
            for (const auto& b : karamata::builtins())
                std::cout << b.name << "\tcriterion " << b.criterion << "\t" << b.summary << "\n";
            return 0;
        }
        if (*show_cmd) {
            auto* b = karamata::find_builtin(show_name);
            if (!b) throw karamata::input_error("unknown builtin '" + show_name + "'");
            std::cout << b->text;
            return 0;
        }
        karamata::RunOverrides ov;
        if (*tol_opt) ov.tol = tol;
        if (*win_opt) ov.max_window = max_window;
        return run(target, out_dir, ov);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
