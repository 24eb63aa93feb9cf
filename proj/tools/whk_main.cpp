// whk: weighted-heat-kernel pricing toolkit.
//
// Subcommands: price-bond, yield-curve, price-option, simulate, verify.
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "whk/json_io.hpp"
#include "whk/kernel_engine.hpp"
#include "whk/option.hpp"
#include "whk/simulate.hpp"
#include "whk/verification.hpp"

namespace {

using whk::Json;

struct CliOptions {
    std::string config_path;
    std::string model_family;
    std::optional<double> sigma, U, eta;
    std::string prior_json;
    std::vector<double> t, T, s, K, L;
    std::string grid;
    std::optional<std::size_t> paths;
    std::optional<std::uint64_t> seed;
    std::string measure;
    std::string format;
    std::string out_path;
    std::string suite;
};

Json load_config(const CliOptions& cli) {
    Json config = Json::object();
    if (!cli.config_path.empty()) {
        std::ifstream in(cli.config_path);
        if (!in) throw std::invalid_argument("config: cannot open " + cli.config_path);
        try {
            in >> config;
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
        }
        if (!config.is_object()) throw std::invalid_argument("config: top level must be an object");
    }
    return config;
}

// flags win over the config file
Json effective_model(const CliOptions& cli, const Json& config) {
    Json model = config.contains("model") ? config.at("model") : Json::object();
    if (!cli.model_family.empty()) model["family"] = cli.model_family;
    if (cli.sigma) model["sigma"] = *cli.sigma;
    if (cli.U) model["U"] = *cli.U;
    if (cli.eta) model["eta"] = *cli.eta;
    if (!cli.prior_json.empty()) {
        try {
            model["prior"] = Json::parse(cli.prior_json);
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("config: malformed --prior JSON: ") + e.what());
        }
    }
    // conveniences for the exp-quadratic family
    if (model.value("family", "") == "expquad") {
        if (!model.contains("g0")) model["g0"] = {{"type", "exp"}, {"scale", 1.0}, {"rate", 1.0}};
        if (!model.contains("g1")) model["g1"] = "special";
        if (!model.contains("eta")) model["eta"] = 1.0;
    }
    return model;
}

std::vector<double> effective_list(const std::vector<double>& flag_values, const Json& config,
                                   const char* key) {
    if (!flag_values.empty()) return flag_values;
    if (config.contains(key)) {
        const Json& j = config.at(key);
        if (j.is_number()) return {j.get<double>()};
        if (j.is_array()) {
            std::vector<double> out;
            for (const Json& v : j) {
                if (!v.is_number()) {
                    throw std::invalid_argument(std::string("config: '") + key +
                                                "' must hold numbers");
                }
                out.push_back(v.get<double>());
            }
            return out;
        }
        throw std::invalid_argument(std::string("config: '") + key +
                                    "' must be a number or array");
    }
    return {};
}

double effective_scalar(const std::vector<double>& flag_values, const Json& config,
                        const char* key, std::optional<double> fallback = std::nullopt) {
    auto list = effective_list(flag_values, config, key);
    if (list.size() > 1) {
        throw std::invalid_argument(std::string("config: '") + key + "' must be a single value");
    }
    if (!list.empty()) return list.front();
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("config: missing '") + key + "'");
}

whk::QuadratureOptions quadrature_overrides(const Json& config) {
    whk::QuadratureOptions opts;
    if (!config.contains("quadrature")) return opts;
    const Json& q = config.at("quadrature");
    if (!q.is_object()) throw std::invalid_argument("config: 'quadrature' must be an object");
    if (q.contains("abs_tol")) opts.abs_tol = q.at("abs_tol").get<double>();
    if (q.contains("rel_tol")) opts.rel_tol = q.at("rel_tol").get<double>();
    if (q.contains("gh_nodes")) opts.gh_nodes = q.at("gh_nodes").get<int>();
    if (q.contains("gh_max_nodes")) opts.gh_max_nodes = q.at("gh_max_nodes").get<int>();
    if (q.contains("max_intervals")) opts.max_intervals = q.at("max_intervals").get<int>();
    return opts;
}

// "lo:hi:n" inclusive grid
std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    long n = 0;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(spec);
    in >> lo >> colon1 >> hi >> colon2 >> n;
    if (!in || colon1 != ':' || colon2 != ':' || n < 2 || !(hi > lo)) {
        throw std::invalid_argument("config: grid spec must be lo:hi:n with n >= 2, hi > lo");
    }
    std::vector<double> grid(n);
    for (long i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
    return grid;
}

class OutputWriter {
public:
    OutputWriter(const std::string& path, const std::string& format)
        : format_(format.empty() ? "csv" : format) {
        if (format_ != "csv" && format_ != "json") {
            throw std::invalid_argument("config: format must be csv or json");
        }
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("config: cannot open output path " + path);
        }
    }

    bool json() const { return format_ == "json"; }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::string format_;
    std::ofstream file_;
};

void emit_rows(OutputWriter& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (out.json()) {
        Json array = Json::array();
        for (const auto& row : rows) {
            Json obj = Json::object();
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
            array.push_back(std::move(obj));
        }
        out.stream() << array.dump(2) << "\n";
        return;
    }
    std::ostream& os = out.stream();
    for (std::size_t i = 0; i < header.size(); ++i) {
        os << header[i] << (i + 1 < header.size() ? "," : "\n");
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

double price_bond_dispatch(const whk::ModelConfig& config, double t, double T, double x,
                           const whk::QuadratureOptions& opts) {
    if (const auto* quad = std::get_if<whk::QuadraticModel>(&config.model)) {
        return whk::quad_bond_price(*quad, t, T, x);
    }
    if (const auto* expquad = std::get_if<whk::ExpQuadraticModel>(&config.model)) {
        return whk::expquad_bond_price(*expquad, t, T, x);
    }
    return whk::price_bond_generic(std::get<whk::KernelModel>(config.model), t, T, x, opts);
}

int cmd_price_bond(const CliOptions& cli, const Json& config) {
    const whk::ModelConfig model = whk::model_from_json(effective_model(cli, config));
    const whk::QuadratureOptions quad_opts = quadrature_overrides(config);
    const auto ts = effective_list(cli.t, config, "t");
    const auto Ts = effective_list(cli.T, config, "T");
    const auto Ls = effective_list(cli.L, config, "L");
    if (ts.empty() || Ts.empty()) throw std::invalid_argument("config: need 't' and 'T'");
    const auto xs = Ls.empty() ? std::vector<double>{0.0} : Ls;

    for (double t : ts) {
        for (double T : Ts) {
            if (!(t >= 0.0) || !(T >= t)) {
                throw std::invalid_argument("config: requires 0 <= t <= T < U");
            }
        }
    }

    OutputWriter out(cli.out_path.empty() ? config.value("out", "") : cli.out_path,
                     cli.format.empty() ? config.value("format", "") : cli.format);
    std::vector<std::vector<std::string>> rows;
    for (double t : ts) {
        for (double T : Ts) {
            for (double x : xs) {
                rows.push_back({whk::format_double(t), whk::format_double(T),
                                whk::format_double(x),
                                whk::format_double(price_bond_dispatch(model, t, T, x, quad_opts))});
            }
        }
    }
    emit_rows(out, {"t", "T", "L", "price"}, rows);
    return 0;
}

int cmd_yield_curve(const CliOptions& cli, const Json& config) {
    const whk::ModelConfig model = whk::model_from_json(effective_model(cli, config));
    const whk::QuadratureOptions quad_opts = quadrature_overrides(config);
    const double t = effective_scalar(cli.t, config, "t", 0.0);
    const double x = effective_scalar(cli.L, config, "L", 0.0);
    std::vector<double> Ts;
    const std::string grid_spec =
        !cli.grid.empty() ? cli.grid : config.value("grid", std::string());
    if (!grid_spec.empty()) {
        Ts = parse_grid(grid_spec);
    } else {
        Ts = effective_list(cli.T, config, "T");
    }
    if (Ts.empty()) throw std::invalid_argument("config: need a T grid ('grid' or 'T')");
    for (std::size_t i = 0; i < Ts.size(); ++i) {
        if (!(Ts[i] > t) || (i > 0 && !(Ts[i] > Ts[i - 1]))) {
            throw std::invalid_argument(
                "config: T grid must be strictly increasing and above t");
        }
    }

    OutputWriter out(cli.out_path.empty() ? config.value("out", "") : cli.out_path,
                     cli.format.empty() ? config.value("format", "") : cli.format);
    std::vector<std::vector<std::string>> rows;
    for (double T : Ts) {
        const double price = price_bond_dispatch(model, t, T, x, quad_opts);
        const double yield = -std::log(price) / (T - t);
        rows.push_back({whk::format_double(T), whk::format_double(price),
                        whk::format_double(yield)});
    }
    emit_rows(out, {"T", "price", "yield"}, rows);
    return 0;
}

int cmd_price_option(const CliOptions& cli, const Json& config) {
    const whk::ModelConfig model = whk::model_from_json(effective_model(cli, config));
    const whk::QuadratureOptions quad_opts = quadrature_overrides(config);
    const double s = effective_scalar(cli.s, config, "s", 0.0);
    const double t = effective_scalar(cli.t, config, "t");
    const double T = effective_scalar(cli.T, config, "T");
    // the option schema names the information value L_s; plain L also works
    const double x = config.contains("L_s") ? effective_scalar(cli.L, config, "L_s")
                                            : effective_scalar(cli.L, config, "L", 0.0);
    const auto Ks = effective_list(cli.K, config, "K");
    if (Ks.empty()) throw std::invalid_argument("config: need strike(s) 'K'");
    for (double K : Ks) {
        if (!(K > 0.0)) throw std::invalid_argument("config: strikes must be > 0");
    }

    OutputWriter out(cli.out_path.empty() ? config.value("out", "") : cli.out_path,
                     cli.format.empty() ? config.value("format", "") : cli.format);
    std::vector<std::vector<std::string>> rows;
    for (double K : Ks) {
        const whk::OptionSpec spec{s, t, T, K, x};
        double price = 0.0;
        std::string label;
        if (const auto* quad = std::get_if<whk::QuadraticModel>(&model.model)) {
            const whk::OptionPrice result = whk::quad_option_price(*quad, spec);
            price = result.price;
            label = whk::option_case_label(result.case_taken);
        } else if (std::holds_alternative<whk::KernelModel>(model.model)) {
            const auto& kernel = std::get<whk::KernelModel>(model.model);
            const whk::BridgeLaw law =
                whk::bridge_conditional_law(kernel.process(), s, t, x);
            const double spread = 12.0 * std::sqrt(std::max(law.variance, 1e-12));
            price = whk::lrb_option_price_generic(
                kernel, spec, {law.mean - spread, law.mean + spread}, quad_opts);
            label = "generic";
        } else {
            throw std::invalid_argument(
                "config: option pricing supports the quadratic and generic families");
        }
        rows.push_back({whk::format_double(s), whk::format_double(t), whk::format_double(T),
                        whk::format_double(K), whk::format_double(price), label});
    }
    emit_rows(out, {"s", "t", "T", "K", "price", "case"}, rows);
    return 0;
}

int cmd_simulate(const CliOptions& cli, const Json& config) {
    const whk::ModelConfig model = whk::model_from_json(effective_model(cli, config));
    std::vector<double> grid;
    const std::string grid_spec =
        !cli.grid.empty() ? cli.grid : config.value("grid", std::string());
    if (!grid_spec.empty()) {
        grid = parse_grid(grid_spec);
    } else {
        grid = effective_list(cli.t, config, "t");
    }
    if (grid.empty()) throw std::invalid_argument("config: need a time grid ('grid' or 't')");

    const auto n_paths = cli.paths ? *cli.paths : config.value("paths", std::size_t{1});
    const auto seed = cli.seed ? *cli.seed : config.value("seed", std::uint64_t{1});
    const std::string measure_name =
        !cli.measure.empty() ? cli.measure : config.value("measure", "P");
    whk::Measure measure;
    if (measure_name == "P") {
        measure = whk::Measure::P;
    } else if (measure_name == "B") {
        measure = whk::Measure::B;
    } else {
        throw std::invalid_argument("config: measure must be P or B");
    }

    const auto paths = whk::simulate_paths(model.process(), grid, n_paths, measure, seed);

    OutputWriter out(cli.out_path.empty() ? config.value("out", "") : cli.out_path,
                     cli.format.empty() ? config.value("format", "") : cli.format);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(paths.size() * grid.size());
    for (const whk::PathSample& path : paths) {
        for (std::size_t k = 0; k < path.times.size(); ++k) {
            rows.push_back({std::to_string(path.path_index),
                            whk::format_double(path.times[k]),
                            whk::format_double(path.values[k])});
        }
    }
    emit_rows(out, {"path_id", "time", "value"}, rows);
    return 0;
}

int cmd_verify(const CliOptions& cli, const Json& config) {
    whk::SuiteConfig suite_cfg;
    if (cli.seed) {
        suite_cfg.seed = *cli.seed;
    } else if (config.contains("seed")) {
        suite_cfg.seed = config.at("seed").get<std::uint64_t>();
    }
    if (cli.paths) {
        suite_cfg.n_paths = *cli.paths;
    } else if (config.contains("paths")) {
        suite_cfg.n_paths = config.at("paths").get<std::size_t>();
    }
    const std::string suite =
        !cli.suite.empty() ? cli.suite : config.value("suite", "default");

    const auto reports = whk::run_suite(suite, suite_cfg);

    OutputWriter out(cli.out_path.empty() ? config.value("out", "") : cli.out_path,
                     "json");
    out.stream() << whk::to_json(reports).dump(2) << "\n";
    std::cerr << whk::summary_table(reports);

    for (const whk::CheckReport& r : reports) {
        if (!r.passed) return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted-heat-kernel pricing toolkit"};
    app.require_subcommand(1);

    CliOptions cli;
    auto add_common = [&cli](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "JSON config file (flags win)");
        sub->add_option("--model", cli.model_family, "model family: quadratic|expquad|generic");
        sub->add_option("--sigma", cli.sigma, "information flow rate");
        sub->add_option("--U", cli.U, "information horizon");
        sub->add_option("--eta", cli.eta, "exp-quadratic weight exponent parameter");
        sub->add_option("--prior", cli.prior_json, "prior law as inline JSON");
        sub->add_option("--t", cli.t, "time(s) t")->delimiter(',');
        sub->add_option("--T", cli.T, "maturity/maturities T")->delimiter(',');
        sub->add_option("--s", cli.s, "valuation time s")->delimiter(',');
        sub->add_option("--K", cli.K, "strike(s)")->delimiter(',');
        sub->add_option("--L", cli.L, "information value(s)")->delimiter(',');
        sub->add_option("--grid", cli.grid, "grid spec lo:hi:n");
        sub->add_option("--paths", cli.paths, "number of Monte Carlo paths");
        sub->add_option("--seed", cli.seed, "random seed");
        sub->add_option("--measure", cli.measure, "simulation measure: P|B");
        sub->add_option("--format", cli.format, "output format: csv|json");
        sub->add_option("--out", cli.out_path, "output path (default stdout)");
        sub->add_option("--suite", cli.suite, "verification suite name");
    };

    CLI::App* price_bond = app.add_subcommand("price-bond", "discount bond prices");
    CLI::App* yield_curve = app.add_subcommand("yield-curve", "prices and yields on a T grid");
    CLI::App* price_option = app.add_subcommand("price-option", "European bond call prices");
    CLI::App* simulate = app.add_subcommand("simulate", "simulate information paths to CSV");
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    for (CLI::App* sub : {price_bond, yield_curve, price_option, simulate, verify}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Json config = load_config(cli);
        if (price_bond->parsed()) return cmd_price_bond(cli, config);
        if (yield_curve->parsed()) return cmd_yield_curve(cli, config);
        if (price_option->parsed()) return cmd_price_option(cli, config);
        if (simulate->parsed()) return cmd_simulate(cli, config);
        if (verify->parsed()) return cmd_verify(cli, config);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const whk::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << " (estimate " << e.estimate()
                  << ", error bound " << e.error_bound() << ")\n";
        return 3;
    } catch (const std::range_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
