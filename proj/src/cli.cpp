#include "inlsc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"

namespace inlsc {

namespace {

std::string flag_key(const std::string& token) {
    auto key = token.substr(2, token.find('=') == std::string::npos ? std::string::npos : token.find('=') - 2);
    return key == "out" ? "output.directory" : key;
}

std::set<std::string> override_keys(const std::vector<std::string>& args) {
    std::set<std::string> keys;
    for (const auto& a : args)
        if (a.size() > 2 && a.rfind("--", 0) == 0) keys.insert(flag_key(a));
    return keys;
}

std::string find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return "";
}

}  // namespace

std::vector<std::string> config_file_flags(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    const auto items = CLI::ConfigTOML().from_config(in);
    const auto skip = override_keys(overrides);
    std::vector<std::string> flags;
    for (const auto& item : items) {
        // Section open/close markers.
        if (item.name == "++" || item.name == "--") continue;
        const auto key = item.fullname();
        if (key == "config" || skip.count(key)) continue;
        for (const auto& v : item.inputs) flags.push_back("--" + key + "=" + v);
    }
    return flags;
}

ParsedCli parse_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ParsedCli res;
    RunConfig& cfg = res.config;
    CLI::App app{"Numerical laboratory for the energy-critical inhomogeneous NLS with inverse-square potential",
                 "inlsc_cli"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string scenario = to_string(cfg.scenario), kind = to_string(cfg.initial.kind),
                data_class = to_string(cfg.data_class), config_path;
    auto list = [](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeAll); };

    app.add_option("--config", config_path, "TOML/INI configuration file");
    app.add_option("--scenario", scenario, "params-check | groundstate | evolve | classify | virial-check | sweep");
    app.add_option("--jobs", cfg.jobs, "concurrent runs in a sweep");
    app.add_option("--out,--output.directory", cfg.output.directory, "output directory");
    app.add_option("--output.sample_interval", cfg.output.sample_interval);

    app.add_option("--params.d", cfg.params.d);
    app.add_option("--params.b", cfg.params.b);
    app.add_option("--params.sigma", cfg.params.sigma, "empty for sigma*");
    app.add_option("--params.lambda", cfg.params.lambda);
    app.add_option("--params.c", cfg.params.c);

    app.add_option("--grid.r_max", cfg.grid.r_max);
    app.add_option("--grid.n", cfg.grid.n);

    auto& sv = cfg.solver;
    app.add_option("--solver.dt0", sv.dt0);
    app.add_option("--solver.dt_min", sv.dt_min);
    app.add_option("--solver.cn_tol", sv.cn_tol);
    app.add_option("--solver.blowup_grad_factor", sv.blowup_grad_factor);
    app.add_option("--solver.blowup_abs", sv.blowup_abs);
    app.add_option("--solver.t_end", sv.t_end);
    app.add_option("--solver.boundary_mass_limit", sv.boundary_mass_limit);
    app.add_option("--solver.safety", sv.safety);
    app.add_option("--solver.adaptive", sv.adaptive);
    app.add_option("--solver.nonlinear", sv.nonlinear);
    app.add_option("--solver.record_virial", sv.record_virial);
    app.add_option("--solver.virial_radius", sv.virial_radius);

    auto& id = cfg.initial;
    app.add_option("--initial.kind", kind, "gaussian | ground_state | scaled_ground_state | file");
    app.add_option("--initial.amplitude,--initial.a", id.amplitude);
    app.add_option("--initial.width", id.width);
    app.add_option("--initial.epsilon", id.epsilon);
    app.add_option("--initial.path", id.path);
    app.add_option("--initial.taper", id.taper);
    app.add_option("--initial.taper_start", id.taper_start);
    app.add_option("--initial.taper_end", id.taper_end);

    app.add_option("--classify.data_class", data_class, "finite_variance | radial | neither");
    list(app.add_option("--virial.radii", cfg.virial_radii));
    app.add_option("--virial.t_lo", cfg.virial_t_lo);
    app.add_option("--virial.t_hi", cfg.virial_t_hi);
    app.add_option("--groundstate.minimize", cfg.minimize);
    app.add_option("--groundstate.max_iters", cfg.minimize_iters);
    list(app.add_option("--sweep.amplitudes", cfg.sweep_amplitudes));

    try {
        std::vector<std::string> all;
        const auto path = find_config_path(args);
        if (!path.empty()) all = config_file_flags(path, args);
        all.insert(all.end(), args.begin(), args.end());
        // CLI11 consumes the vector from the back.
        std::reverse(all.begin(), all.end());
        app.parse(all);
        cfg.scenario = parse_scenario(scenario);
        cfg.initial.kind = parse_initial_kind(kind);
        cfg.data_class = parse_data_class(data_class);
    } catch (const CLI::CallForHelp& e) {
        res.exit_code = app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        res.exit_code = exit_code::validation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        res.exit_code = exit_code::validation;
    }
    return res;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto parsed = parse_cli(args, out, err);
    if (parsed.exit_code >= 0) return parsed.exit_code;
    const auto result = run(parsed.config, out);
    out << "summary: " << (std::filesystem::path(parsed.config.output.directory) / "summary.txt").string()
        << " (exit " << result.exit_code << ")\n";
    return result.exit_code;
}

}  // namespace inlsc
