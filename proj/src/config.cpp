#include "finder/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "finder/synthetic.hpp"

namespace finder {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
        throw UsageError("config: " + key + ": expected a number, got '" +
                         value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size())
        throw UsageError("config: " + key + ": expected an integer, got '" +
                         value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size())
        throw UsageError("config: " + key +
                         ": expected a non-negative integer, got '" + value +
                         "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    throw UsageError("config: " + key + ": expected a boolean, got '" +
                     value + "'");
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_real(key, trim(item)));
    if (out.empty())
        throw UsageError("config: " + key + ": expected a list of numbers");
    return out;
}

std::vector<Index> parse_count_list(const std::string& key,
                                    const std::string& value) {
    std::vector<Index> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long long v = parse_int(key, trim(item));
        if (v < 1)
            throw UsageError("config: " + key + ": counts must be positive");
        out.push_back(static_cast<Index>(v));
    }
    if (out.empty())
        throw UsageError("config: " + key + ": expected a list of counts");
    return out;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_reals(const std::vector<double>& vs) {
    std::string out;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += format_real(vs[i]);
    }
    return out;
}

// Shared key=value file walker.
template <typename Apply>
void walk_config_file(const std::string& path, Apply&& apply) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config '" + path + "'");
    std::string line;
    Index line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const size_t eq = text.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": expected 'key = value'";
            throw UsageError(msg.str());
        }
        apply(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
}

} // namespace

void apply_config_entry(RunConfig& c, const std::string& key,
                        const std::string& value) {
    if (key == "input_path") c.input_path = value;
    else if (key == "label_column") c.label_column = value;
    else if (key == "positive_label") c.positive_label = value;
    else if (key == "variant") { parse_variant(value); c.variant = value; }
    else if (key == "m_a") { parse_ma_policy(value); c.m_a = value; }
    else if (key == "m_res_list") c.m_res_list = parse_count_list(key, value);
    else if (key == "regime") { parse_regime(value); c.regime = value; }
    else if (key == "kernel") { parse_kernel(value); c.kernel = value; }
    else if (key == "cost") {
        c.cost = parse_real(key, value);
        if (!(c.cost > 0.0))
            throw UsageError("config: cost must be positive");
    } else if (key == "gamma") {
        if (value != "auto") {
            if (!(parse_real(key, value) > 0.0))
                throw UsageError("config: gamma must be positive or 'auto'");
        }
        c.gamma = value;
    } else if (key == "seed") c.seed = parse_u64(key, value);
    else if (key == "impute_k") {
        const long long v = parse_int(key, value);
        if (v < 1) throw UsageError("config: impute_k must be at least 1");
        c.impute_k = static_cast<Index>(v);
    } else if (key == "output_dir") c.output_dir = value;
    else if (key == "grid") c.grid = parse_bool(key, value);
    else if (key == "shuffle") c.shuffle = parse_bool(key, value);
    else if (key == "threads") {
        const long long v = parse_int(key, value);
        if (v < 0) throw UsageError("config: threads must be >= 0");
        c.threads = static_cast<int>(v);
    } else {
        throw UsageError("config: unknown key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::string& path) {
    RunConfig c;
    walk_config_file(path, [&](const std::string& k, const std::string& v) {
        apply_config_entry(c, k, v);
    });
    return c;
}

std::string echo_config(const RunConfig& c) {
    std::ostringstream out;
    out << "input_path = " << c.input_path << '\n'
        << "label_column = " << c.label_column << '\n'
        << "positive_label = " << c.positive_label << '\n'
        << "variant = " << c.variant << '\n'
        << "m_a = " << c.m_a << '\n'
        << "m_res_list = ";
    for (size_t i = 0; i < c.m_res_list.size(); ++i) {
        if (i) out << ',';
        out << c.m_res_list[i];
    }
    out << '\n'
        << "regime = " << c.regime << '\n'
        << "kernel = " << c.kernel << '\n'
        << "cost = " << format_real(c.cost) << '\n'
        << "gamma = " << c.gamma << '\n'
        << "seed = " << c.seed << '\n'
        << "impute_k = " << c.impute_k << '\n'
        << "output_dir = " << c.output_dir << '\n'
        << "grid = " << (c.grid ? 1 : 0) << '\n'
        << "shuffle = " << (c.shuffle ? 1 : 0) << '\n'
        << "threads = " << c.threads << '\n';
    return out.str();
}

RunConfig config_from_output_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    RunConfig c;
    std::string line;
    bool any = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# ", 0) != 0) break; // preamble ends
        const std::string text = line.substr(2);
        const size_t eq = text.find('=');
        if (eq == std::string::npos) continue; // descriptive comment
        apply_config_entry(c, trim(text.substr(0, eq)),
                           trim(text.substr(eq + 1)));
        any = true;
    }
    if (!any)
        throw DataError("'" + path + "' carries no config preamble");
    return c;
}

Variant parse_variant(const std::string& name) {
    if (name == "direct") return Variant::Direct;
    if (name == "mls") return Variant::Mls;
    if (name == "aca-s") return Variant::AcaS;
    if (name == "aca-l") return Variant::AcaL;
    throw UsageError("unknown variant '" + name +
                     "' (expected direct, mls, aca-s or aca-l)");
}

Regime parse_regime(const std::string& name) {
    if (name == "balanced") return Regime::Balanced;
    if (name == "unbalanced") return Regime::Unbalanced;
    throw UsageError("unknown regime '" + name +
                     "' (expected balanced or unbalanced)");
}

Kernel::Type parse_kernel(const std::string& name) {
    if (name == "linear") return Kernel::Type::Linear;
    if (name == "rbf") return Kernel::Type::Rbf;
    throw UsageError("unknown kernel '" + name +
                     "' (expected linear or rbf)");
}

MaPolicy parse_ma_policy(const std::string& text) {
    if (text.rfind("energy:", 0) == 0) {
        const double fraction = parse_real("m_a", text.substr(7));
        if (!(fraction > 0.0) || fraction > 1.0)
            throw UsageError("m_a: energy fraction must be in (0, 1]");
        return MaPolicy::energy(fraction);
    }
    const long long v = parse_int("m_a", text);
    if (v < 0) throw UsageError("m_a: count must be non-negative");
    return MaPolicy::count(static_cast<Index>(v));
}

ScenarioSpec parse_scenario_file(const std::string& path) {
    ScenarioSpec s;
    bool have_a = false, have_b = false;
    walk_config_file(path, [&](const std::string& k, const std::string& v) {
        if (k == "f") s.f = static_cast<Index>(parse_int(k, v));
        else if (k == "mean") {
            if (v.find(',') == std::string::npos) {
                s.mean_value = parse_real(k, v);
                s.mean_list.clear();
            } else {
                s.mean_list = parse_real_list(k, v);
            }
        } else if (k == "a_spectrum") { s.a_spectrum = parse_real_list(k, v); have_a = true; }
        else if (k == "b_spectrum") { s.b_spectrum = parse_real_list(k, v); have_b = true; }
        else if (k == "overlap_dims") s.overlap_dims = static_cast<Index>(parse_int(k, v));
        else if (k == "law") { parse_law(v); s.law = v; }
        else if (k == "seed") s.seed = parse_u64(k, v);
        else if (k == "n_a") s.n_a = static_cast<Index>(parse_int(k, v));
        else if (k == "n_b") s.n_b = static_cast<Index>(parse_int(k, v));
        else throw UsageError("scenario: unknown key '" + k + "'");
    });
    if (!have_a || !have_b)
        throw UsageError("scenario: a_spectrum and b_spectrum are required");
    return s;
}

std::string echo_scenario(const ScenarioSpec& s) {
    std::ostringstream out;
    out << "f = " << s.f << '\n';
    if (s.mean_list.empty())
        out << "mean = " << format_real(s.mean_value) << '\n';
    else
        out << "mean = " << join_reals(s.mean_list) << '\n';
    out << "a_spectrum = " << join_reals(s.a_spectrum) << '\n'
        << "b_spectrum = " << join_reals(s.b_spectrum) << '\n'
        << "overlap_dims = " << s.overlap_dims << '\n'
        << "law = " << s.law << '\n'
        << "seed = " << s.seed << '\n'
        << "n_a = " << s.n_a << '\n'
        << "n_b = " << s.n_b << '\n';
    return out.str();
}

CoefficientLaw parse_law(const std::string& name) {
    if (name == "gaussian") return CoefficientLaw::StandardGaussian;
    if (name == "rademacher") return CoefficientLaw::Rademacher;
    if (name == "uniform") return CoefficientLaw::UniformSym;
    throw UsageError("unknown law '" + name +
                     "' (expected gaussian, rademacher or uniform)");
}

Dataset generate_scenario(const ScenarioSpec& s) {
    if (s.n_a < 1 || s.n_b < 1)
        throw UsageError("scenario: n_a and n_b must be at least 1");
    Eigen::VectorXd mean;
    if (s.mean_list.empty()) {
        mean = Eigen::VectorXd::Constant(s.f, s.mean_value);
    } else {
        if (static_cast<Index>(s.mean_list.size()) != s.f)
            throw UsageError("scenario: mean list length differs from f");
        mean = Eigen::Map<const Eigen::VectorXd>(
            s.mean_list.data(), static_cast<Index>(s.mean_list.size()));
    }
    Eigen::Map<const Eigen::VectorXd> spec_a(
        s.a_spectrum.data(), static_cast<Index>(s.a_spectrum.size()));
    Eigen::Map<const Eigen::VectorXd> spec_b(
        s.b_spectrum.data(), static_cast<Index>(s.b_spectrum.size()));

    auto [a, b] = two_class_scenario(s.f, mean, spec_a, spec_b,
                                     s.overlap_dims, s.seed);
    a.law = b.law = parse_law(s.law);

    const Dataset da = sample(a, s.n_a);
    const Dataset db = sample(b, s.n_b);

    Dataset out;
    out.values.resize(s.n_a + s.n_b, s.f);
    out.values << da.values, db.values;
    out.labels.assign(static_cast<size_t>(s.n_a), ClassLabel::A);
    out.labels.insert(out.labels.end(), static_cast<size_t>(s.n_b),
                      ClassLabel::B);
    for (Index j = 0; j < s.f; ++j)
        out.feature_names.push_back("f" + std::to_string(j));
    return out;
}

} // namespace finder
