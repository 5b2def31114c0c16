#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "aqs/errors.hpp"
#include "aqs/format.hpp"

namespace aqs::cli {

namespace {

enum class Type { Int, Number, Positive, NumberOrInf, NumberList, Text, TextList, Bool };

struct KeySpec {
    std::string name;
    Type type;
    std::string help;
    // Whether the key is used, given the subcommand and the keys resolved so far.
    std::function<bool(const std::string&, const json&)> applies;
    // Default value; null means the key stays absent unless given.
    std::function<json(const std::string&, const json&)> fallback;
    // Extra validation on the typed value; returns an error message or "".
    std::function<std::string(const json&, const json&)> check;
};

using Subs = std::set<std::string>;

const Subs kAll{"simulate", "sweep-time", "sweep-detuning", "two-level", "gapmap", "golden-rule",
                "calibrate-schedule"};
const Subs kRuns{"simulate", "sweep-time", "sweep-detuning", "two-level", "calibrate-schedule"};
const Subs kBaths{"simulate", "sweep-time", "sweep-detuning", "two-level", "gapmap", "golden-rule"};

std::function<bool(const std::string&, const json&)> in(Subs subs) {
    return [subs = std::move(subs)](const std::string& sub, const json&) { return subs.count(sub) > 0; };
}

std::function<bool(const std::string&, const json&)> in_with(Subs subs, std::string key, std::string value) {
    return [subs = std::move(subs), key = std::move(key), value = std::move(value)](const std::string& sub,
                                                                                    const json& r) {
        return subs.count(sub) > 0 && r.contains(key) && r.at(key) == value;
    };
}

std::function<json(const std::string&, const json&)> constant(json v) {
    return [v = std::move(v)](const std::string&, const json&) { return v; };
}

std::function<std::string(const json&, const json&)> one_of(std::vector<std::string> options) {
    return [options = std::move(options)](const json& v, const json&) -> std::string {
        const auto s = v.get<std::string>();
        if (std::find(options.begin(), options.end(), s) != options.end()) return "";
        std::string msg = "expected one of";
        for (const auto& o : options) msg += " '" + o + "'";
        return msg + ", got '" + s + "'";
    };
}

std::function<std::string(const json&, const json&)> range(double lo, double hi, bool lo_open = false,
                                                           bool hi_open = false) {
    return [=](const json& v, const json&) -> std::string {
        auto bad = [&](double x) {
            return (lo_open ? !(x > lo) : !(x >= lo)) || (hi_open ? !(x < hi) : !(x <= hi));
        };
        std::vector<double> xs;
        if (v.is_array()) {
            for (const auto& e : v) xs.push_back(e.get<double>());
        } else if (v.is_number()) {
            xs.push_back(v.get<double>());
        }
        for (double x : xs) {
            if (bad(x)) {
                std::ostringstream os;
                os << "must lie in " << (lo_open ? '(' : '[') << lo << ", " << hi << (hi_open ? ')' : ']')
                   << ", got " << x;
                return os.str();
            }
        }
        return "";
    };
}

double n_items(const json& r) {
    if (r.at("problem") == "grover") return std::ldexp(1.0, r.at("n").get<int>());
    const double a0 = r.at("a0").get<double>();
    return 1.0 / (1.0 - a0 * a0);
}

double t_lin(const json& r) { return 4.0 * n_items(r) / std::numbers::pi; }

std::string bath_default(const std::string& sub) {
    if (sub == "sweep-detuning" || sub == "two-level" || sub == "gapmap" || sub == "golden-rule") return "structured";
    return "thermal";
}

const std::vector<KeySpec>& schema() {
    static const std::vector<KeySpec> keys = [] {
        std::vector<KeySpec> k;
        const double inf = std::numeric_limits<double>::infinity();
        k.push_back({"problem", Type::Text, "grover | single_site", in(kAll),
                     [](const std::string& sub, const json&) { return json(sub == "two-level" ? "single_site" : "grover"); },
                     one_of({"grover", "single_site"})});
        k.push_back({"n", Type::Int, "qubits of the Grover problem, N = 2^n", in_with(kAll, "problem", "grover"),
                     constant(10), range(1, 30)});
        k.push_back({"a0", Type::Number, "initial amplitude on |0> of the single-site problem",
                     in_with(kAll, "problem", "single_site"), constant(std::sqrt(0.5)), range(0, 1, true, true)});
        k.push_back({"schedule", Type::Text, "linear | optimal", in(Subs{"simulate", "sweep-time", "sweep-detuning", "two-level"}),
                     constant("linear"), one_of({"linear", "optimal"})});
        k.push_back({"bath", Type::Text, "thermal | structured | none", in(kBaths),
                     [](const std::string& sub, const json&) { return json(bath_default(sub)); },
                     one_of({"thermal", "structured", "none"})});
        k.push_back({"eta", Type::NumberList, "coupling strengths (complex-rate series, or the single run)",
                     [](const std::string& sub, const json& r) {
                         return kBaths.count(sub) > 0 && r.contains("bath") && r.at("bath") != "none";
                     },
                     [](const std::string& sub, const json&) -> json {
                         if (sub == "simulate") return json::array({0.05});
                         if (sub == "sweep-time") return json::array({0.05, 0.1});
                         if (sub == "sweep-detuning") return json::array({0.01, 0.05, 0.1, 0.4});
                         if (sub == "two-level") return json::array({0.01, 0.05, 0.2});
                         return json::array({0.1});
                     },
                     range(0, inf)});
        k.push_back({"modes", Type::TextList, "rate modes of the sweep: complex, real",
                     [](const std::string& sub, const json& r) {
                         return (sub == "sweep-time" || sub == "sweep-detuning" || sub == "two-level") &&
                                r.at("bath") != "none";
                     },
                     [](const std::string& sub, const json&) -> json {
                         if (sub == "sweep-detuning") return json::array({"complex", "real"});
                         return json::array({"complex"});
                     },
                     [](const json& v, const json&) -> std::string {
                         for (const auto& e : v) {
                             const auto m = one_of({"complex", "real"})(e, json());
                             if (!m.empty()) return m;
                         }
                         return v.empty() ? "need at least one mode" : "";
                     }});
        k.push_back({"eta_real", Type::NumberList, "couplings of the real-rate series (default: eta)",
                     [](const std::string& sub, const json& r) {
                         if (!r.contains("modes")) return false;
                         const auto& m = r.at("modes");
                         return (sub == "sweep-time" || sub == "sweep-detuning" || sub == "two-level") &&
                                std::find(m.begin(), m.end(), "real") != m.end();
                     },
                     [](const std::string& sub, const json& r) -> json {
                         if (sub == "sweep-detuning") return json::array({0.01, 0.05, 0.2});
                         return r.at("eta");
                     },
                     range(0, inf)});
        k.push_back({"mode", Type::Text, "complex | real",
                     [](const std::string& sub, const json& r) { return sub == "simulate" && r.at("bath") != "none"; },
                     constant("complex"), one_of({"complex", "real"})});
        k.push_back({"omega_c", Type::Number, "ohmic cutoff frequency", in_with(kBaths, "bath", "thermal"),
                     constant(0.25), range(0, inf, true)});
        k.push_back({"s_exp", Type::Number, "spectral exponent, 1 = ohmic", in_with(kBaths, "bath", "thermal"),
                     constant(1.0), range(0, inf, true)});
        k.push_back({"beta", Type::NumberOrInf, "inverse temperature, \"inf\" for zero temperature",
                     in_with(kBaths, "bath", "thermal"), constant("inf"), range(0, inf, true)});
        k.push_back({"omega0", Type::Number, "trap frequency of the structured bath",
                     in_with(kBaths, "bath", "structured"),
                     [](const std::string& sub, const json&) { return json(sub == "two-level" ? 0.5 : 0.25); },
                     range(0, inf, true)});
        k.push_back({"delta_L", Type::Number, "laser detuning of the structured bath",
                     [](const std::string& sub, const json& r) {
                         return sub != "sweep-detuning" && kBaths.count(sub) && r.at("bath") == "structured";
                     },
                     [](const std::string& sub, const json&) {
                         if (sub == "two-level") return json(0.5);
                         if (sub == "gapmap" || sub == "golden-rule") return json(0.28);
                         return json(0.2);
                     },
                     range(-inf, inf)});
        k.push_back({"phase_sign", Type::Int, "sign of the detuning phase in g(t), +1 or -1",
                     in_with(kBaths, "bath", "structured"), constant(1),
                     [](const json& v, const json&) -> std::string {
                         const int s = v.get<int>();
                         return s == 1 || s == -1 ? "" : "must be +1 or -1, got " + std::to_string(s);
                     }});
        k.push_back({"T", Type::Positive, "total evolution time",
                     in(Subs{"simulate", "sweep-detuning", "calibrate-schedule"}),
                     [](const std::string& sub, const json& r) {
                         return json((sub == "calibrate-schedule" ? 1.0 : 0.8) * t_lin(r));
                     },
                     range(0, inf, true, true)});
        k.push_back({"t_max", Type::Positive, "largest total time of the T grid (absolute)",
                     in(Subs{"sweep-time", "two-level"}),
                     [](const std::string& sub, const json& r) -> json {
                         if (sub == "two-level") return 10.0;
                         return (r.at("bath") == "structured" ? 1.0 : 0.8) * t_lin(r);
                     },
                     range(0, inf, true, true)});
        k.push_back({"t_min_fraction", Type::Number, "smallest T of the grid as a fraction of t_max",
                     in(Subs{"sweep-time", "two-level"}), constant(0.05), range(0, 1, true)});
        k.push_back({"t_points", Type::Int, "number of geometric T grid points", in(Subs{"sweep-time", "two-level"}),
                     constant(12), range(1, 100000)});
        k.push_back({"delta_L_min", Type::Number, "lower end of the detuning scan", in(Subs{"sweep-detuning"}),
                     constant(0.05), range(-inf, inf)});
        k.push_back({"delta_L_max", Type::Number, "upper end of the detuning scan", in(Subs{"sweep-detuning"}),
                     constant(0.6), [](const json& v, const json& r) -> std::string {
                         return v.get<double>() > r.at("delta_L_min").get<double>() ? "" : "must exceed delta_L_min";
                     }});
        k.push_back({"delta_L_points", Type::Int, "points of the detuning scan", in(Subs{"sweep-detuning"}),
                     constant(23), range(1, 100000)});
        k.push_back({"s_points", Type::Int, "points of the uniform s grid on [0, 1]",
                     in(Subs{"gapmap", "golden-rule"}), constant(101), range(2, 1000000)});
        k.push_back({"omega_min", Type::Number, "lower end of the frequency grid", in(Subs{"gapmap"}), constant(0.0),
                     range(-inf, inf)});
        k.push_back({"omega_max", Type::Number, "upper end of the frequency grid", in(Subs{"gapmap"}), constant(1.2),
                     [](const json& v, const json& r) -> std::string {
                         return v.get<double>() > r.at("omega_min").get<double>() ? "" : "must exceed omega_min";
                     }});
        k.push_back({"omega_points", Type::Int, "points of the frequency grid", in(Subs{"gapmap"}), constant(121),
                     range(2, 1000000)});
        k.push_back({"target", Type::Number, "closed-system success the chosen schedule should reach",
                     in(Subs{"calibrate-schedule"}), constant(0.55), range(0, 1)});
        k.push_back({"tolerance", Type::Number, "accepted distance from target", in(Subs{"calibrate-schedule"}),
                     constant(0.10), range(0, 1, true)});
        k.push_back({"formulation", Type::Text, "matrix | bloch | closed_unitary", in(kRuns), constant("matrix"),
                     one_of({"matrix", "bloch", "closed_unitary"})});
        k.push_back({"h", Type::Number, "RK4 step, 0 = min(0.1, T/1000)", in(kRuns), constant(0.0), range(0, inf)});
        k.push_back({"refine", Type::Int, "multiplies the step count, 2 halves h", in(kRuns), constant(1), range(1, 64)});
        k.push_back({"grid_step", Type::Number, "correlation grid step, 0 = automatic", in(kRuns), constant(0.0),
                     range(0, inf)});
        k.push_back({"tail_tol", Type::Number, "relative |g| below which the correlation tail is dropped", in(kRuns),
                     constant(1e-6), range(0, 1)});
        k.push_back({"samples", Type::Int, "trajectory samples", in(kRuns), constant(201), range(2, 10000000)});
        k.push_back({"tol_pos", Type::Number, "Bloch norm excess counted as a positivity violation", in(kRuns),
                     constant(1e-6), range(0, inf)});
        k.push_back({"flag_threshold", Type::Number, "Bloch norm excess that flags a run as unphysical", in(kRuns),
                     constant(0.05), range(0, inf)});
        k.push_back({"max_grid_samples", Type::Int, "cap on correlation grid size", in(kRuns),
                     constant(static_cast<std::int64_t>(kDefaultMaxGridSamples)), range(2, 2e9)});
        k.push_back({"out", Type::Text, "output directory", in(kAll), constant("aqs-out"), nullptr});
        k.push_back({"jobs", Type::Int, "worker threads, 0 = number of cores", in(kAll), constant(0), range(0, 4096)});
        k.push_back({"gnuplot", Type::Bool, "also write a gnuplot script", in(kAll), constant(false), nullptr});
        k.push_back({"dump_rates", Type::Bool, "write the rates at every trajectory sample", in(Subs{"simulate"}),
                     constant(false), nullptr});
        k.push_back({"dump_grid", Type::Bool, "write the cached correlation grid", in(Subs{"simulate"}),
                     constant(false), nullptr});
        return k;
    }();
    return keys;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

const char* type_name(Type t) {
    switch (t) {
    case Type::Int: return "an integer";
    case Type::Number: return "a number";
    case Type::Positive: return "a positive number";
    case Type::NumberOrInf: return "a number or \"inf\"";
    case Type::NumberList: return "a number or a list of numbers";
    case Type::Text: return "a string";
    case Type::TextList: return "a string or a list of strings";
    case Type::Bool: return "true or false";
    }
    return "";
}

// Coerces to the canonical form or throws.
json coerce(const KeySpec& spec, const json& v) {
    auto fail = [&] {
        throw ConfigError(spec.name + ": expected " + type_name(spec.type) + ", got " + v.dump());
    };
    switch (spec.type) {
    case Type::Int:
        if (v.is_number_integer()) return v;
        if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>() &&
            std::abs(v.get<double>()) < 9e15) {
            return json(static_cast<std::int64_t>(v.get<double>()));
        }
        fail();
        break;
    case Type::Number:
    case Type::Positive:
        if (!v.is_number()) fail();
        return json(v.get<double>());
    case Type::NumberOrInf:
        if (v.is_string() && (v == "inf" || v == "infinity")) return json("inf");
        if (!v.is_number()) fail();
        return json(v.get<double>());
    case Type::NumberList: {
        json out = json::array();
        if (v.is_number()) {
            out.push_back(v.get<double>());
        } else if (v.is_array()) {
            for (const auto& e : v) {
                if (!e.is_number()) fail();
                out.push_back(e.get<double>());
            }
        } else {
            fail();
        }
        return out;
    }
    case Type::Text:
        if (!v.is_string()) fail();
        return v;
    case Type::TextList: {
        json out = json::array();
        if (v.is_string()) {
            out.push_back(v);
        } else if (v.is_array()) {
            for (const auto& e : v) {
                if (!e.is_string()) fail();
                out.push_back(e);
            }
        } else {
            fail();
        }
        return out;
    }
    case Type::Bool:
        if (!v.is_boolean()) fail();
        return v;
    }
    return v;
}

const KeySpec* find_key(const std::string& name) {
    for (const auto& k : schema()) {
        if (k.name == name) return &k;
    }
    return nullptr;
}

std::string unknown_key_message(const std::string& key) {
    std::string msg = "unknown key '" + key + "'";
    const std::string near = suggest_key(key);
    if (!near.empty()) msg += " (did you mean '" + near + "'?)";
    return msg;
}

} // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> subs{"simulate", "sweep-time", "sweep-detuning", "two-level",
                                               "gapmap", "golden-rule", "calibrate-schedule"};
    return subs;
}

std::string suggest_key(const std::string& key) {
    std::string lower = key;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    std::string best;
    std::size_t best_d = std::numeric_limits<std::size_t>::max();
    std::vector<std::string> names{"subcommand"};
    for (const auto& k : schema()) names.push_back(k.name);
    for (const auto& name : names) {
        std::string lname = name;
        std::transform(lname.begin(), lname.end(), lname.begin(), [](unsigned char c) { return std::tolower(c); });
        const std::size_t d = std::min(edit_distance(key, name), edit_distance(lower, lname));
        if (d < best_d) {
            best_d = d;
            best = name;
        }
    }
    const std::size_t limit = std::max<std::size_t>(2, key.size() / 3);
    return best_d <= limit ? best : "";
}

std::string schema_help() {
    std::ostringstream os;
    os << "Config keys (JSON object; --set key=value overrides):\n";
    os << "  subcommand  one of";
    for (const auto& s : subcommands()) os << ' ' << s;
    os << '\n';
    for (const auto& k : schema()) {
        os << "  " << k.name << std::string(k.name.size() < 17 ? 17 - k.name.size() : 1, ' ') << k.help << '\n';
    }
    os << "Defaults depend on the subcommand; the resolved config is written to manifest.json.\n";
    return os.str();
}

json parse_config_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        const auto pos = what.find("parse error");
        if (pos != std::string::npos) what = what.substr(pos);
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    }
    if (!doc.is_object()) throw ConfigError(origin + ": config must be a JSON object");
    // a manifest carries the resolved config
    if (doc.contains("config") && doc.contains("version") && doc.at("config").is_object()) {
        return doc.at("config");
    }
    return doc;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void apply_override(json& user, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set: expected key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    user[key] = value;
}

RunConfig resolve(json user, const std::string& subcommand) {
    if (!user.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    if (!subcommand.empty()) {
        cfg.subcommand_ = subcommand;
    } else if (user.contains("subcommand")) {
        if (!user.at("subcommand").is_string()) throw ConfigError("subcommand: expected a string");
        cfg.subcommand_ = user.at("subcommand").get<std::string>();
    } else {
        throw ConfigError("subcommand: missing (give it on the command line or in the config)");
    }
    const auto& subs = subcommands();
    if (std::find(subs.begin(), subs.end(), cfg.subcommand_) == subs.end()) {
        std::string msg = "subcommand: unknown '" + cfg.subcommand_ + "', expected one of";
        for (const auto& s : subs) msg += " " + s;
        throw ConfigError(msg);
    }
    user.erase("subcommand");

    for (const auto& [key, value] : user.items()) {
        if (find_key(key) == nullptr) throw ConfigError(unknown_key_message(key));
    }

    json r = json::object();
    r["subcommand"] = cfg.subcommand_;
    for (const auto& spec : schema()) {
        const bool applies = spec.applies(cfg.subcommand_, r);
        if (!applies) {
            if (user.contains(spec.name)) {
                throw ConfigError(spec.name + ": not used by '" + cfg.subcommand_ + "' with this configuration");
            }
            continue;
        }
        json v = user.contains(spec.name) ? user.at(spec.name) : spec.fallback(cfg.subcommand_, r);
        if (v.is_null()) continue;
        v = coerce(spec, v);
        if (spec.check) {
            const std::string problem = spec.check(v, r);
            if (!problem.empty()) throw ConfigError(spec.name + ": " + problem);
        }
        r[spec.name] = v;
    }

    // cross-field rules
    const std::string& sub = cfg.subcommand_;
    if ((sub == "sweep-detuning" || sub == "two-level") && r.at("bath") != "structured") {
        throw ConfigError("bath: '" + sub + "' needs the structured bath");
    }
    if (sub == "two-level" && r.at("problem") != "single_site") {
        throw ConfigError("problem: 'two-level' needs problem = single_site");
    }
    if (sub == "simulate" && r.contains("eta") && r.at("eta").size() != 1) {
        throw ConfigError("eta: simulate takes a single coupling");
    }
    if (r.contains("formulation") && r.at("formulation") == "closed_unitary" && r.contains("eta")) {
        for (const auto& e : r.at("eta")) {
            if (e.get<double>() != 0.0) throw ConfigError("formulation: closed_unitary requires eta = 0");
        }
    }
    if (r.contains("eta") && r.at("eta").empty()) throw ConfigError("eta: need at least one value");
    if (r.contains("t_min_fraction") && r.at("t_points").get<int>() > 1 && r.at("t_min_fraction").get<double>() >= 1.0) {
        throw ConfigError("t_min_fraction: must be < 1 for more than one grid point");
    }
    cfg.values_ = std::move(r);
    return cfg;
}

double RunConfig::number(const std::string& key) const {
    const auto& v = values_.at(key);
    if (v.is_string()) return std::numeric_limits<double>::infinity(); // "inf"
    return v.get<double>();
}

int RunConfig::integer(const std::string& key) const { return values_.at(key).get<int>(); }
bool RunConfig::flag(const std::string& key) const { return values_.at(key).get<bool>(); }
std::string RunConfig::text(const std::string& key) const { return values_.at(key).get<std::string>(); }

std::vector<double> RunConfig::numbers(const std::string& key) const {
    return values_.at(key).get<std::vector<double>>();
}

std::vector<std::string> RunConfig::texts(const std::string& key) const {
    return values_.at(key).get<std::vector<std::string>>();
}

AdiabaticProblem RunConfig::problem() const {
    if (text("problem") == "grover") return make_grover(integer("n"));
    return make_single_site(number("a0"));
}

ScheduleKind RunConfig::schedule() const {
    return has("schedule") ? schedule_kind_from_string(text("schedule")) : ScheduleKind::Linear;
}

Bath RunConfig::bath(double eta) const {
    const std::string kind = has("bath") ? text("bath") : "none";
    if (kind == "thermal") return OhmicBath{eta, number("s_exp"), number("omega_c"), number("beta")};
    if (kind == "structured") {
        const double dl = has("delta_L") ? number("delta_L") : number("delta_L_min");
        return StructuredBath{eta, number("omega0"), dl, integer("phase_sign")};
    }
    return OhmicBath{0.0};
}

std::vector<Series> RunConfig::series() const {
    std::vector<Series> out;
    if (!has("modes")) return out;
    for (const auto& m : texts("modes")) {
        const RateMode mode = rate_mode_from_string(m);
        const auto etas = mode == RateMode::RealOnly ? numbers("eta_real") : numbers("eta");
        for (double e : etas) {
            // the closed baseline is always part of a sweep
            if (e != 0.0) out.push_back({mode, e});
        }
    }
    return out;
}

IntegratorConfig RunConfig::integrator() const {
    IntegratorConfig c;
    c.formulation = formulation_from_string(text("formulation"));
    c.h = number("h");
    c.refine = integer("refine");
    c.grid_step = number("grid_step");
    c.tail_tol = number("tail_tol");
    c.samples = integer("samples");
    c.tol_pos = number("tol_pos");
    c.flag_threshold = number("flag_threshold");
    c.max_grid_samples = values_.at("max_grid_samples").get<std::size_t>();
    return c;
}

double RunConfig::linear_time() const { return aqs::linear_time(problem()); }

} // namespace aqs::cli
