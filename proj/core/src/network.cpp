#include "adhoc1d/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace adhoc1d {

std::string to_string(ModelKind kind) {
    return kind == ModelKind::Free ? "free" : "anchored";
}

std::string to_string(const Model& model) {
    if (model.kind == ModelKind::Free) return "free";
    if (model.anchor == 0.0) return "anchored";
    std::ostringstream out;
    out << "anchored@" << model.anchor;
    return out.str();
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "free") return ModelKind::Free;
    if (text == "anchored") return ModelKind::Anchored;
    throw DomainError("unknown model '" + text + "' (expected free or anchored)");
}

Model NetworkConfig::model() const {
    if (!access_point) return Model::free();
    return Model::anchored(*access_point / length);
}

std::string to_string(const ConfigViolation& violation) {
    return violation.field + ": " + violation.constraint;
}

ConfigCheck validate_config(const NetworkConfig& config) {
    std::vector<ConfigViolation> violations;
    if (!(config.length > 0.0) || !std::isfinite(config.length))
        violations.push_back({"length", "segment length must be positive and finite"});
    if (!(config.radius > 0.0) || !std::isfinite(config.radius))
        violations.push_back({"radius", "radius must be positive and finite"});
    if (config.access_point) {
        const double x = *config.access_point;
        // An invalid length makes the upper bound meaningless; still reject NaN.
        if (!(x >= 0.0) || (config.length > 0.0 && x > config.length))
            violations.push_back({"access_point", "access point outside segment [0, L]"});
    }
    if (violations.empty()) return config;
    return violations;
}

const NetworkConfig& require_valid(const NetworkConfig& config) {
    auto check = validate_config(config);
    if (auto* violations = std::get_if<std::vector<ConfigViolation>>(&check)) {
        std::string message = "invalid network config:";
        for (const auto& v : *violations) message += " [" + to_string(v) + "]";
        throw DomainError(message);
    }
    return config;
}

Realization Realization::from_positions(const NetworkConfig& config,
                                        std::vector<double> random_positions) {
    require_valid(config);
    if (random_positions.size() != config.n)
        throw DomainError("realization needs exactly n random positions");
    for (double p : random_positions) {
        if (!(p >= 0.0 && p <= config.length))
            throw DomainError("realization position outside [0, L]");
    }
    if (config.access_point) random_positions.push_back(*config.access_point);
    std::sort(random_positions.begin(), random_positions.end());
    return Realization(config, std::move(random_positions));
}

std::size_t count_components(std::span<const double> sorted_positions, double radius) {
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    if (sorted_positions.empty()) return 0;
    std::size_t components = 1;
    for (std::size_t i = 1; i < sorted_positions.size(); ++i) {
        const double gap = sorted_positions[i] - sorted_positions[i - 1];
        if (gap < 0.0) throw ContractViolation("count_components: positions not sorted ascending");
        components += gap > radius ? 1 : 0;
    }
    return components;
}

std::size_t count_components(const Realization& realization, double radius) {
    return count_components(realization.positions(), radius);
}

std::string to_string(Provenance provenance) {
    switch (provenance) {
    case Provenance::ExactFloat: return "exact-float";
    case Provenance::ExactRational: return "exact-rational";
    case Provenance::MonteCarlo: return "monte-carlo";
    case Provenance::Oracle: return "oracle";
    }
    return "unknown";
}

double ComponentDistribution::at(std::size_t m) const {
    auto it = probs.find(m);
    return it == probs.end() ? 0.0 : it->second;
}

double ComponentDistribution::total() const {
    return std::accumulate(probs.begin(), probs.end(), 0.0,
                           [](double acc, const auto& kv) { return acc + kv.second; });
}

}  // namespace adhoc1d
