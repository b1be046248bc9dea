#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photatom/amplitude.hpp"
#include "photatom/analysis.hpp"
#include "photatom/moments.hpp"
#include "photatom/output.hpp"
#include "photatom/params.hpp"
#include "photatom/schmidt.hpp"

namespace {

using photatom::ordered_json;

struct Opts {
    double eta = 10.0;
    double tau = 1.0;
    double epsilon = 0.0;
    double gc = 0.0;
    double fixed = 0.0;
    int n = 1000;
    int modes = 3;
    std::string q_range;  // "min,max"; empty = default extents
    std::string k_range;
    std::string etas;  // comma lists; empty = singleton from eta/tau
    std::string taus;
    std::string axis = "q";
    std::string format = "json";
    std::string out;
    std::string config_path;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const size_t first = token.find_first_not_of(" \t");
        const size_t last = token.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw std::invalid_argument(std::string(what) +
                                        ": empty element in list");
        }
        token = token.substr(first, last - first + 1);
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(value)) {
            throw std::invalid_argument(std::string(what) +
                                        ": cannot parse '" + token + "'");
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty list");
    }
    return values;
}

std::optional<std::pair<double, double>> parse_range(const std::string& text,
                                                     const char* what) {
    if (text.empty()) return std::nullopt;
    const std::vector<double> values = parse_list(text, what);
    if (values.size() != 2) {
        throw std::invalid_argument(std::string(what) +
                                    " must be exactly 'min,max'");
    }
    return std::make_pair(values[0], values[1]);
}

std::vector<double> sorted_unique(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

photatom::Axis parse_axis(const std::string& text) {
    if (text == "q") return photatom::Axis::q;
    if (text == "k") return photatom::Axis::k;
    throw std::invalid_argument("axis must be 'q' or 'k'");
}

photatom::GridPolicy make_policy(const Opts& o) {
    photatom::GridPolicy policy;
    policy.n = o.n;
    policy.q_range = parse_range(o.q_range, "q-range");
    policy.k_range = parse_range(o.k_range, "k-range");
    return policy;
}

ordered_json range_json(const std::optional<std::pair<double, double>>& r) {
    if (!r) return nullptr;
    return ordered_json::array({r->first, r->second});
}

ordered_json list_json(const std::vector<double>& xs) {
    ordered_json arr = ordered_json::array();
    for (double x : xs) arr.push_back(x);
    return arr;
}

// The full effective configuration, echoed into every artifact; feeding it
// back through --config replays the run byte-for-byte.
ordered_json echo_config(const std::string& command, const Opts& o,
                         const std::vector<double>* etas,
                         const std::vector<double>* taus) {
    ordered_json cfg = ordered_json::object();
    cfg["command"] = command;
    cfg["eta"] = o.eta;
    cfg["tau"] = o.tau;
    cfg["epsilon"] = o.epsilon;
    cfg["gc"] = o.gc;
    cfg["n"] = o.n;
    cfg["q_range"] = range_json(parse_range(o.q_range, "q-range"));
    cfg["k_range"] = range_json(parse_range(o.k_range, "k-range"));
    cfg["etas"] = etas ? list_json(*etas) : ordered_json(nullptr);
    cfg["taus"] = taus ? list_json(*taus) : ordered_json(nullptr);
    cfg["axis"] = o.axis;
    cfg["fixed"] = o.fixed;
    cfg["modes"] = o.modes;
    cfg["format"] = o.format;
    cfg["out"] = o.out;
    return cfg;
}

photatom::Table field_table(const photatom::AmplitudeField& field) {
    photatom::Table table{"field", {"dq", "dk", "re", "im", "abs2"}, {}};
    const Eigen::ArrayXd q = field.grid.q_nodes();
    const Eigen::ArrayXd k = field.grid.k_nodes();
    table.rows.reserve(static_cast<size_t>(field.grid.n_q) * field.grid.n_k);
    for (int i = 0; i < field.grid.n_q; ++i) {
        for (int j = 0; j < field.grid.n_k; ++j) {
            const std::complex<double> a = field.values(i, j);
            table.rows.push_back(
                {q[i], k[j], a.real(), a.imag(), std::norm(a)});
        }
    }
    return table;
}

photatom::Document cmd_field(const Opts& o) {
    const photatom::ControlParams ctrl(o.eta, o.tau, o.epsilon, o.gc);
    const photatom::GridSpec grid = make_policy(o).make_grid(ctrl);
    const photatom::AmplitudeField field = photatom::scattered_field(ctrl, grid);

    photatom::Document doc;
    doc.config = echo_config("field", o, nullptr, nullptr);
    doc.tables.push_back(field_table(field));
    doc.diagnostics = ordered_json::object();
    doc.diagnostics["kind"] = "scattered";
    doc.diagnostics["norm_constant"] = photatom::scattered_norm_constant(ctrl);
    return doc;
}

photatom::Document cmd_transmitted(const Opts& o) {
    const photatom::ControlParams ctrl(o.eta, o.tau, o.epsilon, o.gc);
    const photatom::GridSpec grid = make_policy(o).make_grid(ctrl);
    const photatom::AmplitudeField field =
        photatom::transmitted_field(o.eta, ctrl, grid);

    photatom::Document doc;
    doc.config = echo_config("transmitted", o, nullptr, nullptr);
    doc.tables.push_back(field_table(field));
    doc.diagnostics = ordered_json::object();
    doc.diagnostics["kind"] = "transmitted";
    doc.diagnostics["ratio"] = photatom::ratio_R(field).ratio;
    doc.diagnostics["schmidt_K"] = photatom::schmidt_decompose(field, 0).K;
    return doc;
}

photatom::Document cmd_ratio(const Opts& o) {
    const std::vector<double> etas = sorted_unique(
        o.etas.empty() ? std::vector<double>{o.eta}
                       : parse_list(o.etas, "etas"));
    const std::vector<double> taus = sorted_unique(
        o.taus.empty() ? std::vector<double>{o.tau}
                       : parse_list(o.taus, "taus"));
    const photatom::Axis axis = parse_axis(o.axis);
    const photatom::GridPolicy policy = make_policy(o);

    photatom::Table table{"ratio",
                          {"eta", "tau", "axis", "fixed_value",
                           "single_variance", "coinc_variance", "ratio",
                           "ratio_asymptotic"},
                          {}};
    for (double eta : etas) {
        for (double tau : taus) {
            const photatom::ControlParams ctrl(eta, tau, o.epsilon);
            const photatom::AmplitudeField field =
                photatom::scattered_field(ctrl, policy.make_grid(ctrl));
            const photatom::VarianceReport report =
                photatom::ratio_R(field, axis, o.fixed);
            table.rows.push_back({eta, tau, o.axis, report.fixed_value,
                                  report.single_variance,
                                  report.coinc_variance, report.ratio,
                                  photatom::ratio_R_asymptotic(ctrl)});
        }
    }

    photatom::Document doc;
    doc.config = echo_config("ratio", o, &etas, &taus);
    doc.tables.push_back(std::move(table));
    doc.diagnostics = ordered_json::object();
    doc.diagnostics["provenance"] = policy.describe();
    return doc;
}

photatom::Document cmd_schmidt(const Opts& o) {
    const photatom::ControlParams ctrl(o.eta, o.tau, o.epsilon);
    const photatom::GridSpec grid = make_policy(o).make_grid(ctrl);
    const photatom::AmplitudeField field = photatom::scattered_field(ctrl, grid);
    const photatom::SchmidtSpectrum spectrum =
        photatom::schmidt_decompose(field, o.modes);

    photatom::Document doc;
    doc.config = echo_config("schmidt", o, nullptr, nullptr);

    photatom::Table lambdas{"spectrum", {"n", "lambda"}, {}};
    for (int i = 0; i < spectrum.lambdas.size(); ++i) {
        lambdas.rows.push_back({i, spectrum.lambdas[i]});
    }
    doc.tables.push_back(std::move(lambdas));

    const Eigen::ArrayXd q = grid.q_nodes();
    const Eigen::ArrayXd k = grid.k_nodes();
    photatom::Table photon{"photon_modes", {"mode", "dk", "re", "im", "abs2"},
                           {}};
    photatom::Table atom{"atom_modes", {"mode", "dq", "re", "im", "abs2"}, {}};
    for (int n = 0; n < o.modes; ++n) {
        for (int j = 0; j < grid.n_k; ++j) {
            const std::complex<double> v = spectrum.photon_modes(j, n);
            photon.rows.push_back({n, k[j], v.real(), v.imag(), std::norm(v)});
        }
        for (int i = 0; i < grid.n_q; ++i) {
            const std::complex<double> v = spectrum.atom_modes(i, n);
            atom.rows.push_back({n, q[i], v.real(), v.imag(), std::norm(v)});
        }
    }
    doc.tables.push_back(std::move(photon));
    doc.tables.push_back(std::move(atom));

    doc.diagnostics = ordered_json::object();
    doc.diagnostics["schmidt_K"] = spectrum.K;
    doc.diagnostics["raw_sum_residue"] = spectrum.raw_sum_residue;
    const int lead = static_cast<int>(std::ceil(spectrum.K));
    double captured = 0.0;
    for (int i = 0; i < lead && i < spectrum.lambdas.size(); ++i) {
        captured += spectrum.lambdas[i];
    }
    doc.diagnostics["captured_by_ceil_K"] = captured;
    if (grid.n_k >= 32) {
        ordered_json peaks = ordered_json::array();
        for (int n = 0; n < o.modes; ++n) {
            peaks.push_back(
                photatom::count_peaks(spectrum.photon_modes.col(n)));
        }
        doc.diagnostics["photon_mode_peaks"] = std::move(peaks);
    }
    return doc;
}

photatom::Document cmd_sweep(const Opts& o) {
    const std::vector<double> etas =
        o.etas.empty() ? std::vector<double>{o.eta}
                       : parse_list(o.etas, "etas");
    const std::vector<double> taus =
        o.taus.empty() ? std::vector<double>{o.tau}
                       : parse_list(o.taus, "taus");
    const photatom::GridPolicy policy = make_policy(o);
    const photatom::SweepTable result =
        photatom::sweep(etas, taus, photatom::Measures{}, policy);

    photatom::Table table{"sweep",
                          {"eta", "tau", "ratio", "schmidt_K", "n_q", "n_k",
                           "q_min", "q_max", "k_min", "k_max", "error"},
                          {}};
    for (const photatom::SweepRow& row : result.rows) {
        table.rows.push_back({row.eta, row.tau, row.ratio, row.schmidt_K,
                              row.n_q, row.n_k, row.q_min, row.q_max,
                              row.k_min, row.k_max, row.error});
    }

    const std::vector<double> se = sorted_unique(etas);
    const std::vector<double> st = sorted_unique(taus);
    photatom::Document doc;
    doc.config = echo_config("sweep", o, &se, &st);
    doc.tables.push_back(std::move(table));
    doc.diagnostics = ordered_json::object();
    doc.diagnostics["provenance"] = result.provenance;
    return doc;
}

photatom::Document cmd_epc(const Opts& o) {
    const std::vector<double> taus = sorted_unique(
        o.taus.empty() ? std::vector<double>{0.1, 0.2, 0.3, 0.5, 0.7, 1.0}
                       : parse_list(o.taus, "taus"));
    const std::vector<double> etas = sorted_unique(
        o.etas.empty() ? std::vector<double>{5.0, 10.0, 15.0, 20.0}
                       : parse_list(o.etas, "etas"));
    const photatom::GridPolicy policy = make_policy(o);

    photatom::Table table{"epc", {"tau", "epc"}, {}};
    std::vector<double> values;
    values.reserve(taus.size());
    for (double tau : taus) {
        const double value = photatom::epc(tau, etas, policy);
        values.push_back(value);
        table.rows.push_back({tau, value});
    }

    photatom::Document doc;
    doc.config = echo_config("epc", o, &etas, &taus);
    doc.tables.push_back(std::move(table));
    doc.diagnostics = ordered_json::object();
    doc.diagnostics["provenance"] = policy.describe();

    const bool fittable =
        taus.size() >= 4 &&
        std::all_of(taus.begin(), taus.end(),
                    [](double t) { return t > 0.0 && t <= 1.0; });
    if (fittable) {
        const photatom::CurveFit fit = photatom::epc_curve_fit(taus, values);
        photatom::Table fit_table{"fit", {"a", "b", "rms_residual"}, {}};
        fit_table.rows.push_back({fit.a, fit.b, fit.rms_residual});
        doc.tables.push_back(std::move(fit_table));
    } else {
        doc.diagnostics["fit"] =
            "skipped: needs >= 4 tau points inside (0, 1]";
    }
    return doc;
}

photatom::Document cmd_converge(const Opts& o) {
    const photatom::ControlParams ctrl(o.eta, o.tau, o.epsilon);
    const photatom::GridPolicy policy = make_policy(o);
    const photatom::GridSpec base = policy.make_grid(ctrl);

    photatom::Table table{"converge",
                          {"level", "n", "q_min", "q_max", "k_min", "k_max",
                           "ratio", "schmidt_K", "ratio_rel_delta",
                           "schmidt_K_rel_delta"},
                          {}};
    double prev_r = 0.0, prev_k = 0.0;
    for (int level = 0; level < 2; ++level) {
        photatom::GridSpec grid = base;
        if (level == 1) {
            // double both the extents (about each axis center) and the
            // node counts
            const double qc = 0.5 * (base.q_min + base.q_max);
            const double qh = base.q_max - qc;
            const double kc = 0.5 * (base.k_min + base.k_max);
            const double kh = base.k_max - kc;
            grid = photatom::GridSpec(qc - 2.0 * qh, qc + 2.0 * qh,
                                      kc - 2.0 * kh, kc + 2.0 * kh,
                                      2 * base.n_q, 2 * base.n_k, base.rule);
        }
        const photatom::AmplitudeField field =
            photatom::scattered_field(ctrl, grid);
        const double r = photatom::ratio_R(field).ratio;
        const double k = photatom::schmidt_decompose(field, 0).K;
        if (level == 0) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            table.rows.push_back({level, grid.n_q, grid.q_min, grid.q_max,
                                  grid.k_min, grid.k_max, r, k, nan, nan});
        } else {
            table.rows.push_back({level, grid.n_q, grid.q_min, grid.q_max,
                                  grid.k_min, grid.k_max, r, k,
                                  std::abs(r - prev_r) / prev_r,
                                  std::abs(k - prev_k) / prev_k});
        }
        prev_r = r;
        prev_k = k;
    }

    photatom::Document doc;
    doc.config = echo_config("converge", o, nullptr, nullptr);
    doc.tables.push_back(std::move(table));
    doc.diagnostics = ordered_json::object();
    return doc;
}

double config_number(const ordered_json& value, const std::string& key) {
    if (!value.is_number()) {
        throw std::invalid_argument("config key '" + key +
                                    "' must be a number");
    }
    return value.get<double>();
}

std::string config_list_text(const ordered_json& value,
                             const std::string& key) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_array()) {
        std::string text;
        for (const auto& item : value) {
            if (!item.is_number()) {
                throw std::invalid_argument("config key '" + key +
                                            "' must hold numbers");
            }
            if (!text.empty()) text += ",";
            text += photatom::format12(item.get<double>());
        }
        return text;
    }
    throw std::invalid_argument("config key '" + key +
                                "' must be a list or 'a,b,...' string");
}

// File values fill in only the flags the command line left untouched.
void apply_config(const std::string& path, CLI::App* active, Opts& o) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file: " + path);
    }
    ordered_json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " +
                                    std::string(e.what()));
    }
    if (!cfg.is_object()) {
        throw std::invalid_argument("config file must hold a JSON object");
    }

    const auto untouched = [active](const std::string& flag) {
        return active->count(flag) == 0;
    };

    for (const auto& [key, value] : cfg.items()) {
        if (key == "command") {
            if (value.is_string() &&
                value.get<std::string>() != active->get_name()) {
                throw std::invalid_argument(
                    "config command '" + value.get<std::string>() +
                    "' does not match the invoked command '" +
                    active->get_name() + "'");
            }
        } else if (key == "eta") {
            if (untouched("--eta")) o.eta = config_number(value, key);
        } else if (key == "tau") {
            if (untouched("--tau")) o.tau = config_number(value, key);
        } else if (key == "epsilon") {
            if (untouched("--epsilon")) o.epsilon = config_number(value, key);
        } else if (key == "gc") {
            if (untouched("--gc")) o.gc = config_number(value, key);
        } else if (key == "fixed") {
            if (untouched("--fixed")) o.fixed = config_number(value, key);
        } else if (key == "n") {
            if (untouched("--n")) {
                o.n = static_cast<int>(config_number(value, key));
            }
        } else if (key == "modes") {
            if (untouched("--modes")) {
                o.modes = static_cast<int>(config_number(value, key));
            }
        } else if (key == "q_range") {
            if (untouched("--q-range") && !value.is_null()) {
                o.q_range = config_list_text(value, key);
            }
        } else if (key == "k_range") {
            if (untouched("--k-range") && !value.is_null()) {
                o.k_range = config_list_text(value, key);
            }
        } else if (key == "etas") {
            if (untouched("--etas") && !value.is_null()) {
                o.etas = config_list_text(value, key);
            }
        } else if (key == "taus") {
            if (untouched("--taus") && !value.is_null()) {
                o.taus = config_list_text(value, key);
            }
        } else if (key == "axis") {
            if (untouched("--axis")) o.axis = value.get<std::string>();
        } else if (key == "format") {
            if (untouched("--format")) o.format = value.get<std::string>();
        } else if (key == "out") {
            if (untouched("--out")) o.out = value.get<std::string>();
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

void write_document(const photatom::Document& doc, const Opts& o) {
    const std::string payload =
        o.format == "csv" ? photatom::to_csv(doc) : photatom::to_json(doc);
    if (o.out.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::invalid_argument("cannot open output path: " + o.out);
    }
    file.write(payload.data(),
               static_cast<std::streamsize>(payload.size()));
    if (!file) {
        throw std::invalid_argument("failed writing output path: " + o.out);
    }
}

}  // namespace

int main(int argc, char** argv) {
    // the LAPACK backend may be threaded; pin it so identical runs reduce
    // in an identical order
    setenv("OPENBLAS_NUM_THREADS", "1", 1);
    setenv("OMP_NUM_THREADS", "1", 1);

    CLI::App app{"photon-atom momentum-entanglement toolkit"};
    app.set_version_flag("--version", std::string(photatom::kVersion));
    app.require_subcommand(1);

    Opts o;
    const auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--eta", o.eta, "atomic momentum spread");
        cmd->add_option("--tau", o.tau, "photon linewidth ratio");
        cmd->add_option("--epsilon", o.epsilon, "recoil shift");
        cmd->add_option("--gc", o.gc, "forward coupling strength");
        cmd->add_option("--n", o.n, "grid nodes per axis");
        cmd->add_option("--q-range", o.q_range, "momentum extent 'min,max'");
        cmd->add_option("--k-range", o.k_range, "detuning extent 'min,max'");
        cmd->add_option("--etas", o.etas, "comma-separated eta list");
        cmd->add_option("--taus", o.taus, "comma-separated tau list");
        cmd->add_option("--axis", o.axis, "measured axis: q or k");
        cmd->add_option("--fixed", o.fixed, "partner-axis slice position");
        cmd->add_option("--modes", o.modes, "Schmidt modes to export");
        cmd->add_option("--out", o.out, "output file (default stdout)");
        cmd->add_option("--format", o.format, "csv or json");
        cmd->add_option("--config", o.config_path, "JSON config file");
    };

    add_common(app.add_subcommand("field", "sample the scattered amplitude"));
    add_common(app.add_subcommand(
        "ratio", "single vs coincidence variance ratio"));
    add_common(app.add_subcommand(
        "schmidt", "Schmidt spectrum and mode functions"));
    add_common(app.add_subcommand("sweep", "R and K over an (eta,tau) grid"));
    add_common(app.add_subcommand(
        "epc", "entanglement gain vs the spontaneous baseline"));
    add_common(app.add_subcommand(
        "transmitted", "forward-channel field and measures"));
    add_common(app.add_subcommand(
        "converge", "grid-refinement ladder for R and K"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (!o.config_path.empty()) {
            apply_config(o.config_path, active, o);
        }
        if (o.format != "csv" && o.format != "json") {
            throw std::invalid_argument("format must be 'csv' or 'json'");
        }
        parse_axis(o.axis);

        const std::string name = active->get_name();
        photatom::Document doc;
        if (name == "field") doc = cmd_field(o);
        else if (name == "ratio") doc = cmd_ratio(o);
        else if (name == "schmidt") doc = cmd_schmidt(o);
        else if (name == "sweep") doc = cmd_sweep(o);
        else if (name == "epc") doc = cmd_epc(o);
        else if (name == "transmitted") doc = cmd_transmitted(o);
        else doc = cmd_converge(o);

        write_document(doc, o);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
