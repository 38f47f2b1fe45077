#ifndef SPECLAB_CONFIG_HPP
#define SPECLAB_CONFIG_HPP

#include "speclab/fourier_field.hpp"
#include "speclab/or_function.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace speclab {

// Line-oriented `key = value` experiment description under [section]
// headers. Sections: [or], [field], [norms], [schedule], [stress],
// [abstract]. Unknown sections or keys are rejected at parse time; values
// are validated when a subcommand asks for its typed view.
class ExperimentConfig {
public:
    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_string(const std::string& text);
    static ExperimentConfig parse_file(const std::string& path);

    // Canonical serialization: fixed section order, sorted keys. Parsing the
    // output yields an equal config.
    std::string serialize() const;

    bool operator==(const ExperimentConfig&) const = default;

    bool has_section(const std::string& name) const { return sections_.contains(name); }

    ORFunction or_function() const;
    // Optional beta factorization carried on beta_* keys of [or].
    std::optional<ORFunction> beta_function() const;

    struct FieldParams {
        int n = 1;
        double epsilon = 0.5;
        double radius = 16.0;
        std::uint64_t seed = 1;
    };
    FieldParams field_params() const;

    NormSpec norm_spec(const std::optional<ORFunction>& alpha = std::nullopt) const;

    struct ScheduleParams {
        std::vector<double> lambdas;  // empty = use the default geometric schedule
        double m = 2.0;               // operator order
    };
    ScheduleParams schedule_params() const;

    struct StressParams {
        int trials = 10;
        std::uint64_t seed = 1;
    };
    StressParams stress_params() const;

    struct AbstractParams {
        int dimension = 8;  // M
        double q = 2.0;
        int configs = 100;
        std::uint64_t seed = 1;
    };
    AbstractParams abstract_params() const;

    struct IndexParams {
        double t_max = 1e6;
        std::vector<double> lambda_grid;  // empty = default grid
        int t_grid_size = 257;
    };
    IndexParams index_params() const;

    // --seed override: rewrites every per-section seed key that is present.
    void override_seeds(std::uint64_t seed);

private:
    using Section = std::map<std::string, std::string>;
    std::map<std::string, Section> sections_;

    const Section& need(const std::string& name) const;
    static double to_number(const std::string& value, const std::string& context);
    static std::vector<double> to_list(const std::string& value, const std::string& context);
};

}  // namespace speclab

#endif  // SPECLAB_CONFIG_HPP
