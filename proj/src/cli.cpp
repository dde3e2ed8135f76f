#include "dhdae/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dhdae/integrate.hpp"
#include "dhdae/io.hpp"
#include "dhdae/models.hpp"

namespace dhdae::cli {

using io::json;

namespace {

struct Source {
    std::string label;
    Pencil pencil;
    std::optional<BlockDhdae> system;
    std::optional<Ph1dSystem> ph1d;
    std::optional<StokesMac> stokes;
    Vec initial_x1;
    bool deliberately_singular = false;
};

Source load_source(const RunConfig& cfg) {
    if (cfg.model.empty() == cfg.file.empty()) throw Error(ErrorCode::usage, "give exactly one of --model or --file");
    Source src;
    if (!cfg.model.empty()) {
        Model m = build_model(cfg.model, parse_params(cfg.params));
        src.label = cfg.model;
        src.pencil = m.pencil;
        src.system = m.system;
        src.ph1d = m.ph1d;
        src.stokes = m.stokes;
        src.initial_x1 = m.initial_x1;
        src.deliberately_singular = m.info.deliberately_singular;
    } else {
        if (!cfg.params.empty()) throw Error(ErrorCode::usage, "--param applies to --model only");
        if (cfg.grid < 4) throw Error(ErrorCode::usage, "--N must be at least 4");
        auto loaded = io::load_system(io::read_json_file(cfg.file), cfg.grid);
        src.label = cfg.file;
        src.pencil = loaded.pencil;
        src.system = loaded.system;
        src.ph1d = loaded.ph1d;
        if (src.system) src.initial_x1 = Vec::Ones(src.system->n1());
    }
    return src;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw Error(ErrorCode::io, "cannot write '" + cfg.out + "'");
    f << text;
}

bool a22_invertible(const BlockDhdae& sys) { return sys.n2() == 0 || is_invertible(sys.A22(), Tolerances{}.inv); }

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    Source src = load_source(cfg);
    auto samples = cfg.s_list.empty() ? default_samples() : parse_samples(cfg.s_list);
    auto report = is_regular_sampled(src.pencil, samples);
    json j = {{"source", src.label}, {"n", src.pencil.n()}, {"n1", src.pencil.n1}, {"regularity", io::report_to_json(report)}};
    if (src.system) {
        j["dissipative"] = check_dissipative(src.system->A());
        j["coercive"] = check_coercive(src.system->E1(), src.system->Q1());
        j["schur_reducible"] = a22_invertible(*src.system);
    }
    if (src.ph1d) {
        json shots = json::array();
        for (auto s : samples) {
            auto shot = fundamental_matrix(*src.ph1d, s);
            shots.push_back({{"s", io::complex_to_json(s)},
                             {"det", io::complex_to_json(shot.det)},
                             {"sigma_min", shot.sigma_min},
                             {"regular", shot.regular}});
        }
        j["shooting"] = shots;
        j["wb_dissipative"] = check_wb_dissipative(src.ph1d->P1, src.ph1d->WB);
    }
    if (src.stokes) {
        auto ic = infsup_constants(src.stokes->saddle);
        j["saddle"] = {{"garding", garding_constant(src.stokes->saddle)},
                       {"closed_range", closed_range_bound(src.stokes->saddle)},
                       {"infsup_alpha", ic.alpha},
                       {"infsup_gamma", ic.gamma}};
    }
    emit(cfg, out, j.dump(2) + "\n");
    return report.regular ? 0 : 1;
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
    Source src = load_source(cfg);
    if (!src.system) throw Error(ErrorCode::usage, "reduction needs a block system");
    std::string method = cfg.method.empty() ? (a22_invertible(*src.system) ? "schur" : "subspace") : cfg.method;
    json j;
    if (method == "schur") j = io::reduced_to_json(schur_reduce(*src.system));
    else if (method == "subspace") j = io::subspace_to_json(subspace_reduce(*src.system));
    else throw Error(ErrorCode::usage, "unknown method '" + method + "'");
    j["source"] = src.label;
    emit(cfg, out, j.dump(2) + "\n");
    return 0;
}

Vec initial_state(const BlockDhdae& sys, const Vec& x1) {
    if (a22_invertible(sys)) return consistent_init(sys, x1);
    Vec x = Vec::Zero(sys.n());
    x.head(sys.n1()) = x1;
    return x;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    Source src = load_source(cfg);
    if (!src.system) throw Error(ErrorCode::usage, "simulation needs a block system");
    auto traj = simulate(*src.system, initial_state(*src.system, src.initial_x1), cfg.tau, cfg.t_end);
    auto en = energy(*src.system, traj);
    std::ostringstream os;
    if (cfg.format == "csv") write_trajectory_csv(os, traj, en);
    else if (cfg.format == "json") os << io::trajectory_to_json(traj, en).dump(2) << "\n";
    else throw Error(ErrorCode::usage, "unknown format '" + cfg.format + "'");
    emit(cfg, out, os.str());
    if (!cfg.energy_out.empty()) {
        std::ofstream f(cfg.energy_out);
        if (!f) throw Error(ErrorCode::io, "cannot write '" + cfg.energy_out + "'");
        write_energy_csv(f, en);
    }
    return 0;
}

json validate_model(const std::string& name, const ModelParams& params) {
    json checks = json::object();
    Model m = build_model(name, params);
    auto report = is_regular_sampled(m.pencil);
    if (m.info.deliberately_singular) {
        checks["singular"] = !report.regular;
        checks["no_common_kernel"] = report.common_kernel_dim == 0;
        return checks;
    }
    const BlockDhdae& sys = *m.system;
    checks["dissipative"] = check_dissipative(sys.A());
    checks["coercive"] = check_coercive(sys.E1(), sys.Q1());
    checks["regular"] = report.regular && report.stacked_sigma_min > 0.0;
    BlockDhdae back = io::system_from_json(json::parse(io::system_to_json(sys).dump()));
    checks["json_roundtrip"] = back.A() == sys.A() && back.E1() == sys.E1() && back.Q1() == sys.Q1() && back.Q2() == sys.Q2();
    Mat metric = hermitian_part(sys.E1().adjoint() * sys.Q1());
    if (a22_invertible(sys)) {
        auto red = schur_reduce(sys);
        checks["reduced_dissipative"] = check_dissipative(metric * red.Ared);
        auto cv = cross_validate(sys, m.initial_x1, 1e-3, 0.05);
        checks["cross_validate"] = cv.max_deviation < 1e-9;
    } else {
        auto red = subspace_reduce(sys);
        checks["reduced_dissipative"] = check_dissipative(red.Ared_coords);
    }
    auto traj = simulate(sys, initial_state(sys, m.initial_x1), 1e-3, 0.05);
    auto en = energy(sys, traj);
    bool monotone = true;
    for (std::size_t k = 1; k < en.H.size(); ++k)
        if (en.H[k] > en.H[k - 1] + 1e-12 * en.H.front()) monotone = false;
    checks["energy_non_increasing"] = monotone;
    if (m.ph1d) {
        auto shot = fundamental_matrix(*m.ph1d, 1.0);
        checks["shooting_agrees"] = shot.regular == report.regular;
    }
    return checks;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> names;
    if (!cfg.file.empty()) throw Error(ErrorCode::usage, "validate works on registered models");
    ModelParams params = parse_params(cfg.params);
    if (cfg.model.empty()) {
        if (!params.empty()) throw Error(ErrorCode::usage, "--param needs --model");
        for (const auto& info : model_registry()) names.push_back(info.name);
    } else {
        model_info(cfg.model);
        names.push_back(cfg.model);
    }
    std::vector<json> results(names.size());
    const long count = long(names.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) {
        try {
            results[k] = {{"name", names[k]}, {"checks", validate_model(names[k], params)}};
        } catch (const std::exception& e) {
            results[k] = {{"name", names[k]}, {"checks", json::object()}, {"error", e.what()}};
        }
    }
    bool all = true;
    json arr = json::array();
    for (auto& r : results) {
        bool ok = !r.contains("error");
        for (auto& [k, v] : r["checks"].items()) ok = ok && v.get<bool>();
        r["passed"] = ok;
        all = all && ok;
        arr.push_back(r);
    }
    emit(cfg, out, json{{"models", arr}, {"passed", all}}.dump(2) + "\n");
    return all ? 0 : 1;
}

// Fills options from a JSON object; options given as flags keep their flag values.
void apply_config(RunConfig& cfg, const json& j, const CLI::App& sub) {
    if (!j.is_object()) throw Error(ErrorCode::usage, "config file must hold a JSON object");
    auto given = [&](const char* flag) { return sub.get_option_no_throw(flag) && sub.count(flag) > 0; };
    auto text = [&](const std::string& key, const json& v) {
        if (!v.is_string()) throw Error(ErrorCode::usage, "config '" + key + "' must be a string");
        return v.get<std::string>();
    };
    auto number = [&](const std::string& key, const json& v) {
        if (!v.is_number()) throw Error(ErrorCode::usage, "config '" + key + "' must be a number");
        return v.get<double>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "model") {
            if (!given("--model")) cfg.model = text(key, v);
        } else if (key == "file") {
            if (!given("--file")) cfg.file = text(key, v);
        } else if (key == "out") {
            if (!given("--out")) cfg.out = text(key, v);
        } else if (key == "s") {
            if (!given("--s")) cfg.s_list = text(key, v);
        } else if (key == "method") {
            if (!given("--method")) cfg.method = text(key, v);
        } else if (key == "energy_out") {
            if (!given("--energy-out")) cfg.energy_out = text(key, v);
        } else if (key == "format") {
            if (!given("--format")) cfg.format = text(key, v);
        } else if (key == "tau") {
            if (!given("--tau")) cfg.tau = number(key, v);
        } else if (key == "t_end") {
            if (!given("--t-end")) cfg.t_end = number(key, v);
        } else if (key == "N") {
            double n = number(key, v);
            if (n != std::floor(n)) throw Error(ErrorCode::usage, "config 'N' must be an integer");
            if (!given("--N")) cfg.grid = long(n);
        } else if (key == "params") {
            if (given("--param")) continue;
            if (!v.is_object()) throw Error(ErrorCode::usage, "config 'params' must be an object");
            cfg.params.clear();
            for (const auto& [pk, pv] : v.items()) {
                std::ostringstream os;
                os.precision(17);
                os << number("params." + pk, pv);
                cfg.params.push_back(pk + "=" + os.str());
            }
        } else {
            throw Error(ErrorCode::usage, "unknown config key '" + key + "'");
        }
    }
}

bool parse_number(const std::string& text, double& v) {
    if (text.empty()) return false;
    std::size_t used = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == text.size() && std::isfinite(v);
}

Complex parse_sample(std::string t) {
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    const std::string original = t;
    auto fail = [&]() -> Complex { throw Error(ErrorCode::usage, "cannot parse sample point '" + original + "'"); };
    double re = 0.0, im = 0.0;
    if (t.empty()) return fail();
    if (t.back() != 'i' && t.back() != 'j') return parse_number(t, re) ? Complex(re) : fail();
    t.pop_back();
    // The imaginary part starts at the last sign that is neither leading nor an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;)
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    std::string re_text = split == std::string::npos ? "" : t.substr(0, split);
    std::string im_text = split == std::string::npos ? t : t.substr(split);
    if (!re_text.empty() && !parse_number(re_text, re)) return fail();
    if (im_text.empty() || im_text == "+") im = 1.0;
    else if (im_text == "-") im = -1.0;
    else if (!parse_number(im_text, im)) return fail();
    return {re, im};
}

}  // namespace

std::vector<Complex> parse_samples(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_sample(item));
    if (out.empty()) throw Error(ErrorCode::usage, "empty sample list");
    return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "analyze") return cmd_analyze(cfg, out);
        if (cfg.command == "reduce") return cmd_reduce(cfg, out);
        if (cfg.command == "simulate") return cmd_simulate(cfg, out);
        if (cfg.command == "validate") return cmd_validate(cfg, out);
        if (cfg.command == "models") {
            emit(cfg, out, io::models_to_json().dump(2) + "\n");
            return 0;
        }
        err << "unknown command '" << cfg.command << "'\n";
        return 2;
    } catch (const Error& e) {
        err << "dhdae: " << e.what() << "\n";
        return e.code() == ErrorCode::singular ? 1 : 2;
    } catch (const std::exception& e) {
        err << "dhdae: " << e.what() << "\n";
        return 2;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analysis, reduction and simulation of dissipative Hamiltonian DAEs"};
    app.set_version_flag("--version", std::string("dhdae ") + kVersion);
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON file with option values; flags take precedence");
        sub->add_option("--model", cfg.model, "registered model name");
        sub->add_option("--param", cfg.params, "model parameter k=v (repeatable)");
        sub->add_option("--file", cfg.file, "system file (block, pencil or ph1d JSON)");
        sub->add_option("--N", cfg.grid, "grid size for ph1d files");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };
    auto* analyze = app.add_subcommand("analyze", "regularity report");
    add_source(analyze);
    analyze->add_option("--s", cfg.s_list, "sample points, e.g. 1,1+1i,10");
    auto* reduce = app.add_subcommand("reduce", "reduced generator");
    add_source(reduce);
    reduce->add_option("--method", cfg.method, "schur or subspace");
    auto* simulate_cmd = app.add_subcommand("simulate", "implicit midpoint simulation");
    add_source(simulate_cmd);
    simulate_cmd->add_option("--tau", cfg.tau, "step size");
    simulate_cmd->add_option("--t-end", cfg.t_end, "final time");
    simulate_cmd->add_option("--energy-out", cfg.energy_out, "energy CSV path");
    simulate_cmd->add_option("--format", cfg.format, "csv or json");
    auto* models = app.add_subcommand("models", "list registered models");
    models->add_option("--out", cfg.out, "output path (default stdout)");
    models->add_option("--config", config_path, "JSON file with option values; flags take precedence");
    auto* validate = app.add_subcommand("validate", "invariant checks on registered models");
    add_source(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help and --version
        err << "dhdae: " << e.what() << "\n";
        return 2;
    }
    const CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (!config_path.empty()) {
        try {
            apply_config(cfg, io::read_json_file(config_path), *sub);
        } catch (const Error& e) {
            err << "dhdae: " << e.what() << "\n";
            return 2;
        }
    }
    return run(cfg, out, err);
}

}  // namespace dhdae::cli
