#pragma once

#include <optional>
#include <variant>

#include "koszul/blocks.hpp"
#include "koszul/highest_weight.hpp"
#include "koszul/localization.hpp"
#include "koszul/polarized.hpp"

namespace koszul {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct QuiverInstance {
    QuadraticPresentation pres;
    std::optional<PartialOrder> order;  // from the [order] section
    OrderedPresentation ordered() const;
};

struct LocalizationInstance {
    LocalizationAlgebra la;  // degree-2 data only (z_dims = {.., .., z2})
    std::vector<std::string> index_names;
};

struct ArrangementInstance {
    PolarizedArrangement pa;
};

struct BlocksInstance {
    BlockPair bp;
};

struct InstanceFile {
    std::string kind;  // quiver | localization | arrangement | blocks
    std::variant<QuiverInstance, LocalizationInstance, ArrangementInstance, BlocksInstance> body;
    std::string digest;  // FNV-1a of the raw text
};

// Parses the sectioned plain-text instance format.  Unknown sections and
// malformed lines are rejected with line-anchored errors.
InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::string& path);

std::string fnv1a_digest(const std::string& text);

}  // namespace koszul
