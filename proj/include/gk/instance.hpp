#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gk/config.hpp"
#include "gk/scalext.hpp"

namespace gk {

// input errors raised while building an instance; exit code 2 in the CLI
struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instance {
    Config cfg;
    std::string name;  // file name without directories

    FieldPtr F;
    ValPtr v;
    AlgPtr A;
    std::optional<Involution> sigma;
    std::string involution_preset;
    std::optional<DivisionRing> division;
    std::string division_certificate;

    NormPtr phi;  // value function on A (split form)
    std::string phi_kind;
    std::optional<DNorm> alpha;  // for "end" value functions
    std::optional<HermitianForm> form;

    std::optional<GaloisExtension> ext;
    std::string ext_certificate;
    NormPtr ext_norm;  // norm on K^n for descent
    std::optional<EmbeddedField> embedded;
    std::size_t twist = 0;

    GaugeOptions opt;
    std::optional<std::size_t> coarsen_keep;
    std::vector<Vec> units;
    std::vector<std::string> suite;  // commands run by `suite`
    std::vector<std::string> notes;  // certificates checked while loading

    const Involution& involution() const;
    const NormPtr& norm() const;
};

Instance load_instance(const std::string& path);
Instance build_instance(const Config& cfg, const std::string& name);

// Value from "p/q" (rank 1), integer, or array of those
Value parse_value(const Config& cfg, const ConfigValue& v, std::size_t rank, const std::string& what);

}  // namespace gk
