#include "speclab/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace speclab {

namespace {

const std::array<std::string, 6> kSectionOrder = {"or",       "field",  "norms",
                                                  "schedule", "stress", "abstract"};

const std::map<std::string, std::set<std::string>> kAllowedKeys = {
    {"or",
     {"kind", "s", "logexp", "shift", "t0", "r", "s_high", "theta", "beta_const", "knots",
      "beta_vals", "gamma_vals", "t_max", "lambda_grid", "t_grid_size", "beta_kind", "beta_s",
      "beta_logexp", "beta_shift"}},
    {"field", {"n", "epsilon", "radius", "seed"}},
    {"norms", {"kind", "p", "ell", "grid", "oversample"}},
    {"schedule", {"lambdas", "geometric", "m"}},
    {"stress", {"trials", "seed"}},
    {"abstract", {"m_dim", "q", "configs", "seed"}},
};

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

std::uint64_t to_seed(const std::string& value, const std::string& context) {
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config: bad seed in " + context);
    return seed;
}

ThetaSequence parse_theta(const std::string& value) {
    if (value == "pow2") return ThetaSequence::powers_of_two();
    if (value.rfind("geom:", 0) == 0)
        return ThetaSequence::geometric(std::stod(value.substr(5)));
    if (value.rfind("arith:", 0) == 0)
        return ThetaSequence::arithmetic(std::stod(value.substr(6)));
    throw std::invalid_argument("config: theta must be pow2, geom:<ratio>, or arith:<step>");
}

}  // namespace

double ExperimentConfig::to_number(const std::string& value, const std::string& context) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    double number = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config: bad number '" + value + "' in " + context);
    return number;
}

std::vector<double> ExperimentConfig::to_list(const std::string& value,
                                              const std::string& context) {
    std::vector<double> list;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t pos = value.find(',', start);
        const std::string token =
            trim(value.substr(start, pos == std::string::npos ? pos : pos - start));
        if (!token.empty()) list.push_back(to_number(token, context));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return list;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    ExperimentConfig config;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw std::invalid_argument("config: malformed section at line " +
                                            std::to_string(line_no));
            section = trim(text.substr(1, text.size() - 2));
            if (!kAllowedKeys.contains(section))
                throw std::invalid_argument("config: unknown section [" + section + "]");
            config.sections_.try_emplace(section);
            continue;
        }
        const std::size_t eq = text.find('=');
        if (section.empty() || eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(line_no));
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (!kAllowedKeys.at(section).contains(key))
            throw std::invalid_argument("config: unknown key '" + key + "' in [" + section + "]");
        if (!config.sections_[section].emplace(key, value).second)
            throw std::invalid_argument("config: duplicate key '" + key + "' in [" + section + "]");
    }
    return config;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return parse(in);
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream out;
    bool first = true;
    for (const std::string& name : kSectionOrder) {
        const auto it = sections_.find(name);
        if (it == sections_.end()) continue;
        if (!first) out << '\n';
        first = false;
        out << '[' << name << "]\n";
        for (const auto& [key, value] : it->second) out << key << " = " << value << '\n';
    }
    return out.str();
}

const ExperimentConfig::Section& ExperimentConfig::need(const std::string& name) const {
    const auto it = sections_.find(name);
    if (it == sections_.end())
        throw std::invalid_argument("config: missing required section [" + name + "]");
    return it->second;
}

ORFunction ExperimentConfig::or_function() const {
    const Section& s = need("or");
    const auto kind_it = s.find("kind");
    if (kind_it == s.end()) throw std::invalid_argument("config: [or] needs kind");
    const std::string& kind = kind_it->second;

    auto get = [&](const char* key) -> std::optional<std::string> {
        const auto it = s.find(key);
        if (it == s.end()) return std::nullopt;
        return it->second;
    };

    if (kind == "power_log") {
        const auto sv = get("s");
        if (!sv) throw std::invalid_argument("config: power_log needs s");
        std::vector<double> logexp;
        if (const auto v = get("logexp")) logexp = to_list(*v, "[or] logexp");
        const double shift = get("shift") ? to_number(*get("shift"), "[or] shift") : 0.0;
        std::optional<double> t0;
        if (const auto v = get("t0"))
            if (*v != "auto") t0 = to_number(*v, "[or] t0");
        return ORFunction::power_log(to_number(*sv, "[or] s"), std::move(logexp), shift, t0);
    }
    if (kind == "oscillating") {
        const auto rv = get("r");
        const auto sv = get("s_high");
        if (!rv || !sv) throw std::invalid_argument("config: oscillating needs r and s_high");
        const ThetaSequence theta =
            get("theta") ? parse_theta(*get("theta")) : ThetaSequence::powers_of_two();
        const double beta = get("beta_const") ? to_number(*get("beta_const"), "[or] beta_const") : 1.0;
        return ORFunction::oscillating(to_number(*rv, "[or] r"), to_number(*sv, "[or] s_high"),
                                       theta, beta);
    }
    if (kind == "explicit") {
        const auto knots = get("knots");
        const auto bv = get("beta_vals");
        const auto gv = get("gamma_vals");
        if (!knots || !bv || !gv)
            throw std::invalid_argument("config: explicit needs knots, beta_vals, gamma_vals");
        return ORFunction::explicit_representation(to_list(*knots, "[or] knots"),
                                                   to_list(*bv, "[or] beta_vals"),
                                                   to_list(*gv, "[or] gamma_vals"));
    }
    throw std::invalid_argument("config: unknown [or] kind '" + kind + "'");
}

std::optional<ORFunction> ExperimentConfig::beta_function() const {
    const Section& s = need("or");
    const auto kind_it = s.find("beta_kind");
    if (kind_it == s.end()) return std::nullopt;
    if (kind_it->second != "power_log")
        throw std::invalid_argument("config: beta_kind supports power_log only");
    const auto sv = s.find("beta_s");
    if (sv == s.end()) throw std::invalid_argument("config: beta factorization needs beta_s");
    std::vector<double> logexp;
    if (const auto it = s.find("beta_logexp"); it != s.end())
        logexp = to_list(it->second, "[or] beta_logexp");
    double shift = 0.0;
    if (const auto it = s.find("beta_shift"); it != s.end())
        shift = to_number(it->second, "[or] beta_shift");
    return ORFunction::power_log(to_number(sv->second, "[or] beta_s"), std::move(logexp), shift);
}

ExperimentConfig::FieldParams ExperimentConfig::field_params() const {
    const Section& s = need("field");
    FieldParams params;
    if (const auto it = s.find("n"); it != s.end())
        params.n = static_cast<int>(to_number(it->second, "[field] n"));
    if (const auto it = s.find("epsilon"); it != s.end())
        params.epsilon = to_number(it->second, "[field] epsilon");
    if (const auto it = s.find("radius"); it != s.end())
        params.radius = to_number(it->second, "[field] radius");
    if (const auto it = s.find("seed"); it != s.end()) params.seed = to_seed(it->second, "[field]");
    if (params.n < 1 || params.n > 3) throw std::invalid_argument("config: [field] n must be 1..3");
    if (!(params.epsilon > 0.0)) throw std::invalid_argument("config: [field] epsilon must be > 0");
    return params;
}

NormSpec ExperimentConfig::norm_spec(const std::optional<ORFunction>& alpha) const {
    const Section& s = need("norms");
    const auto kind_it = s.find("kind");
    if (kind_it == s.end()) throw std::invalid_argument("config: [norms] needs kind");

    NormSpec spec;
    if (kind_it->second == "l2") {
        spec.kind = NormSpec::Kind::L2;
    } else if (kind_it->second == "lp") {
        spec.kind = NormSpec::Kind::Lp;
    } else if (kind_it->second == "cl") {
        spec.kind = NormSpec::Kind::Cl;
    } else if (kind_it->second == "hoermander") {
        spec.kind = NormSpec::Kind::Hoermander;
        if (!alpha)
            throw std::invalid_argument("config: hoermander norm needs the [or] function");
        spec.alpha = alpha;
    } else {
        throw std::invalid_argument("config: unknown [norms] kind '" + kind_it->second + "'");
    }
    if (const auto it = s.find("p"); it != s.end()) spec.p = to_number(it->second, "[norms] p");
    if (const auto it = s.find("ell"); it != s.end())
        spec.ell = static_cast<int>(to_number(it->second, "[norms] ell"));
    if (const auto it = s.find("grid"); it != s.end())
        spec.grid_per_axis = static_cast<int>(to_number(it->second, "[norms] grid"));
    if (const auto it = s.find("oversample"); it != s.end())
        spec.oversample = static_cast<int>(to_number(it->second, "[norms] oversample"));
    return spec;
}

ExperimentConfig::ScheduleParams ExperimentConfig::schedule_params() const {
    const Section& s = need("schedule");
    ScheduleParams params;
    if (const auto it = s.find("m"); it != s.end()) params.m = to_number(it->second, "[schedule] m");
    const bool has_list = s.contains("lambdas");
    const bool has_geom = s.contains("geometric");
    if (has_list && has_geom)
        throw std::invalid_argument("config: [schedule] lambdas and geometric are exclusive");
    if (has_list) {
        params.lambdas = to_list(s.at("lambdas"), "[schedule] lambdas");
    } else if (has_geom) {
        // start:factor:count
        const std::vector<double> spec3 = [&] {
            std::string v = s.at("geometric");
            std::replace(v.begin(), v.end(), ':', ',');
            return to_list(v, "[schedule] geometric");
        }();
        if (spec3.size() != 3)
            throw std::invalid_argument("config: [schedule] geometric must be start:factor:count");
        double lambda = spec3[0];
        for (int k = 0; k < static_cast<int>(spec3[2]); ++k) {
            params.lambdas.push_back(lambda);
            lambda *= spec3[1];
        }
    }
    if (!(params.m > 0.0)) throw std::invalid_argument("config: [schedule] m must be positive");
    return params;
}

ExperimentConfig::StressParams ExperimentConfig::stress_params() const {
    const Section& s = need("stress");
    StressParams params;
    if (const auto it = s.find("trials"); it != s.end())
        params.trials = static_cast<int>(to_number(it->second, "[stress] trials"));
    if (const auto it = s.find("seed"); it != s.end()) params.seed = to_seed(it->second, "[stress]");
    if (params.trials < 1) throw std::invalid_argument("config: [stress] trials must be >= 1");
    return params;
}

ExperimentConfig::AbstractParams ExperimentConfig::abstract_params() const {
    const Section& s = need("abstract");
    AbstractParams params;
    if (const auto it = s.find("m_dim"); it != s.end())
        params.dimension = static_cast<int>(to_number(it->second, "[abstract] m_dim"));
    if (const auto it = s.find("q"); it != s.end()) params.q = to_number(it->second, "[abstract] q");
    if (const auto it = s.find("configs"); it != s.end())
        params.configs = static_cast<int>(to_number(it->second, "[abstract] configs"));
    if (const auto it = s.find("seed"); it != s.end())
        params.seed = to_seed(it->second, "[abstract]");
    if (params.dimension < 1) throw std::invalid_argument("config: [abstract] m_dim must be >= 1");
    if (params.configs < 1) throw std::invalid_argument("config: [abstract] configs must be >= 1");
    if (!(params.q >= 1.0)) throw std::invalid_argument("config: [abstract] q must be in [1, inf]");
    return params;
}

ExperimentConfig::IndexParams ExperimentConfig::index_params() const {
    const Section& s = need("or");
    IndexParams params;
    if (const auto it = s.find("t_max"); it != s.end())
        params.t_max = to_number(it->second, "[or] t_max");
    if (const auto it = s.find("lambda_grid"); it != s.end())
        if (it->second != "auto") params.lambda_grid = to_list(it->second, "[or] lambda_grid");
    if (const auto it = s.find("t_grid_size"); it != s.end())
        params.t_grid_size = static_cast<int>(to_number(it->second, "[or] t_grid_size"));
    return params;
}

void ExperimentConfig::override_seeds(std::uint64_t seed) {
    for (auto& [name, section] : sections_)
        if (section.contains("seed")) section["seed"] = std::to_string(seed);
}

}  // namespace speclab
