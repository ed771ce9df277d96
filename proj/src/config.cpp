#include "chebvar/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "chebvar/errors.hpp"
#include "chebvar/report.hpp"

namespace chebvar {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

template <typename T>
T parse_integer(const std::string& s) {
    T v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ConfigError("expected an integer, got '" + s + "'");
    return v;
}

double parse_real(const std::string& s) {
    double v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ConfigError("expected a number, got '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ConfigError("expected true or false, got '" + s + "'");
}

struct Entry {
    std::string value;
    int line;
};

}  // namespace

ExperimentOptions ExperimentConfig::experiment_options() const {
    ExperimentOptions o;
    o.workers = run.workers;
    o.memory_budget = static_cast<std::size_t>(run.memory_budget_mb) << 20;
    o.pair_budget = run.pair_budget;
    return o;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
    static const std::map<std::string, std::set<std::string>> known = {
        {"context",
         {"name", "polynomial", "group_order", "class", "class_density", "abelian_conductor", "log_disc_L",
          "admissible_overrides"}},
        {"run", {"x", "Q", "M", "workers", "memory_budget_mb", "pair_budget", "seed"}},
        {"output", {"directory", "manifest"}},
    };

    std::map<std::string, std::map<std::string, Entry>> sections;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    auto fail = [&](int line, const std::string& msg) -> ConfigError {
        return ConfigError(source + ":" + std::to_string(line) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw fail(line_no, "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known.count(section)) throw fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw fail(line_no, "expected 'key = value'");
        if (section.empty()) throw fail(line_no, "key outside of any section");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!known.at(section).count(key)) throw fail(line_no, "unknown field '" + section + "." + key + "'");
        if (sections[section].count(key)) throw fail(line_no, "duplicate field '" + section + "." + key + "'");
        sections[section][key] = {value, line_no};
    }

    ExperimentConfig cfg;
    auto field = [&](const std::string& sec, const std::string& key, bool required, auto&& apply) {
        const auto s = sections.find(sec);
        const bool present = s != sections.end() && s->second.count(key);
        if (!present) {
            if (required) throw ConfigError(source + ": missing required field '" + sec + "." + key + "'");
            return;
        }
        const Entry& e = s->second.at(key);
        try {
            apply(e.value);
        } catch (const Error& err) {
            throw fail(e.line, sec + "." + key + ": " + err.what());
        } catch (const std::exception& err) {
            throw fail(e.line, sec + "." + key + ": invalid value '" + e.value + "'");
        }
    };

    auto& ctx = cfg.context;
    field("context", "name", false, [&](const std::string& v) { ctx.name = v; });
    field("context", "polynomial", true, [&](const std::string& v) {
        for (const auto& c : split_list(v)) ctx.polynomial.push_back(parse_integer<std::int64_t>(c));
    });
    field("context", "group_order", true, [&](const std::string& v) { ctx.group_order = parse_integer<std::uint64_t>(v); });
    field("context", "class", true, [&](const std::string& v) {
        for (const auto& t : split_list(v)) ctx.class_spec.push_back(CycleType::parse(t));
    });
    field("context", "class_density", true, [&](const std::string& v) { ctx.class_density = Rational::parse(v); });
    field("context", "abelian_conductor", true,
          [&](const std::string& v) { ctx.abelian_conductor = parse_integer<std::uint64_t>(v); });
    field("context", "log_disc_L", false, [&](const std::string& v) { ctx.log_disc_L = parse_real(v); });
    field("context", "admissible_overrides", false, [&](const std::string& v) {
        if (v.empty()) return;
        for (const auto& item : split_list(v)) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ConfigError("expected 'q:true' or 'q:false', got '" + item + "'");
            const auto q = parse_integer<std::uint64_t>(trim(std::string_view(item).substr(0, colon)));
            if (q == 0) throw ConfigError("override modulus must be positive");
            ctx.admissibility_overrides[q] = parse_bool(trim(std::string_view(item).substr(colon + 1)));
        }
    });

    auto& run = cfg.run;
    field("run", "x", true, [&](const std::string& v) {
        for (const auto& s : split_list(v)) run.x.push_back(parse_integer<std::uint64_t>(s));
        if (run.x.empty()) throw ConfigError("at least one x value is required");
    });
    field("run", "Q", false, [&](const std::string& v) { run.q_rule = QRule::parse(v); });
    field("run", "M", false, [&](const std::string& v) {
        run.M = parse_real(v);
        if (!(run.M > 0)) throw ConfigError("M must be positive");
    });
    field("run", "workers", false, [&](const std::string& v) {
        run.workers = parse_integer<unsigned>(v);
        if (run.workers == 0) throw ConfigError("workers must be positive");
    });
    field("run", "memory_budget_mb", false,
          [&](const std::string& v) { run.memory_budget_mb = parse_integer<std::uint64_t>(v); });
    field("run", "pair_budget", false, [&](const std::string& v) { run.pair_budget = parse_integer<std::uint64_t>(v); });
    field("run", "seed", false, [&](const std::string& v) { run.seed = parse_integer<std::uint64_t>(v); });

    field("output", "directory", false, [&](const std::string& v) { cfg.output.directory = v; });
    field("output", "manifest", false, [&](const std::string& v) { cfg.output.manifest = parse_bool(v); });

    try {
        (void)build_context(cfg.context);
    } catch (const Error& err) {
        throw ConfigError(source + ": [context]: " + err.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string emit_config(const ExperimentConfig& config) {
    std::ostringstream out;
    const auto& c = config.context;
    out << "[context]\n";
    if (!c.name.empty()) out << "name = " << c.name << "\n";
    out << "polynomial = ";
    for (std::size_t i = 0; i < c.polynomial.size(); ++i) out << (i ? ", " : "") << c.polynomial[i];
    out << "\ngroup_order = " << c.group_order << "\nclass = ";
    for (std::size_t i = 0; i < c.class_spec.size(); ++i) out << (i ? ", " : "") << c.class_spec[i].to_string();
    out << "\nclass_density = " << c.class_density.num << "/" << c.class_density.den << "\n";
    out << "abelian_conductor = " << c.abelian_conductor << "\n";
    if (c.log_disc_L) out << "log_disc_L = " << format_double(*c.log_disc_L) << "\n";
    if (!c.admissibility_overrides.empty()) {
        out << "admissible_overrides = ";
        bool first = true;
        for (const auto& [q, v] : c.admissibility_overrides) {
            out << (first ? "" : ", ") << q << ":" << (v ? "true" : "false");
            first = false;
        }
        out << "\n";
    }

    const auto& r = config.run;
    out << "\n[run]\nx = ";
    for (std::size_t i = 0; i < r.x.size(); ++i) out << (i ? ", " : "") << r.x[i];
    out << "\nQ = " << r.q_rule.to_string() << "\n";
    out << "M = " << format_double(r.M) << "\n";
    out << "workers = " << r.workers << "\n";
    out << "memory_budget_mb = " << r.memory_budget_mb << "\n";
    out << "pair_budget = " << r.pair_budget << "\n";
    out << "seed = " << r.seed << "\n";

    out << "\n[output]\ndirectory = " << config.output.directory << "\n";
    out << "manifest = " << (config.output.manifest ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace chebvar
