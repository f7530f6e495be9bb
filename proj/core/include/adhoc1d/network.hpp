#pragma once

// Network model for one-dimensional ad hoc networks: n nodes dropped
// uniformly on a segment [0, L], an edge between any two nodes at distance
// <= r, and optionally one fixed access point at a known position.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace adhoc1d {

/// Raised when an operation is called outside its mathematical domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a caller breaks a documented precondition (e.g. unsorted input).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Free: no fixed node. Anchored: a fixed node at position 0.
enum class ModelKind { Free, Anchored };

/// A model together with the access-point location, expressed as a fraction
/// of L. Closed forms exist only for Free and for Anchored with anchor == 0.
struct Model {
    ModelKind kind = ModelKind::Free;
    double anchor = 0.0;

    static Model free() { return {ModelKind::Free, 0.0}; }
    static Model anchored(double fraction = 0.0) { return {ModelKind::Anchored, fraction}; }

    bool has_closed_form() const { return kind == ModelKind::Free || anchor == 0.0; }

    friend bool operator==(const Model&, const Model&) = default;
};

std::string to_string(ModelKind kind);
std::string to_string(const Model& model);
/// Accepts "free" and "anchored" (case-sensitive).
ModelKind parse_model_kind(const std::string& text);

struct NetworkConfig {
    std::size_t n = 0;
    double length = 1.0;
    double radius = 1.0;
    std::optional<double> access_point;

    /// L / r, rounded to binary64.
    double ratio() const { return length / radius; }
    Model model() const;
    /// Vertex count including the access point.
    std::size_t vertex_count() const { return n + (access_point ? 1 : 0); }
};

struct ConfigViolation {
    std::string field;
    std::string constraint;
};

std::string to_string(const ConfigViolation& violation);

/// Either the unchanged config or every violated invariant.
using ConfigCheck = std::variant<NetworkConfig, std::vector<ConfigViolation>>;

ConfigCheck validate_config(const NetworkConfig& config);

/// Throws DomainError listing every violation.
const NetworkConfig& require_valid(const NetworkConfig& config);

/// Sorted vertex positions (random nodes plus the access point, if any) drawn
/// under a given configuration. Immutable once built.
class Realization {
public:
    /// Sorts `random_positions` and inserts the access point. Positions must
    /// lie in [0, L] and their count must equal config.n.
    static Realization from_positions(const NetworkConfig& config,
                                      std::vector<double> random_positions);

    std::span<const double> positions() const { return positions_; }
    const NetworkConfig& source_config() const { return config_; }

private:
    Realization(NetworkConfig config, std::vector<double> positions)
        : config_(config), positions_(std::move(positions)) {}

    NetworkConfig config_;
    std::vector<double> positions_;
};

/// Components of the interval graph over ascending positions: one plus the
/// number of consecutive gaps strictly greater than `radius`. Empty input
/// has zero components. Throws ContractViolation if positions descend.
std::size_t count_components(std::span<const double> sorted_positions, double radius);

std::size_t count_components(const Realization& realization, double radius);

enum class Provenance { ExactFloat, ExactRational, MonteCarlo, Oracle };

std::string to_string(Provenance provenance);

/// Probabilities Q_m indexed by component count m >= 1.
struct ComponentDistribution {
    Model model;
    std::size_t n = 0;
    double rho = 0.0;
    Provenance provenance = Provenance::ExactFloat;
    std::map<std::size_t, double> probs;
    /// Populated only for ExactRational provenance.
    std::map<std::size_t, mpq_class> exact;

    double at(std::size_t m) const;
    double total() const;
};

}  // namespace adhoc1d
