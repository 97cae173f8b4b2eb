#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlmp/model.hpp"

namespace nlmp {

struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;
};

/// A parsed .nlmp file. Files with the `lmp` header also keep the kernels.
struct ModelDocument {
    Nlmp model;
    std::optional<Lmp> lmp;
    /// Where each nonempty T_a(s) was written, keyed by (state, label).
    std::map<std::pair<State, LabelId>, std::vector<SourceLocation>> transition_lines;

    std::optional<SourceLocation> location_of(State s, LabelId a) const;
};

/// Grammar, one directive per line, `#` starts a comment:
///
///     states s t x
///     labels a b
///     sigma powerset            (default)   |   sigma gen {s t} {x}
///     lmp                       (optional: at most one measure per state and label)
///     trans s a x:1/2 t:1/2
///     trans s a -> x
///
/// Weights on states sharing an atom are summed. Throws ParseError.
ModelDocument parse_model(std::string_view text);
ModelDocument load_model(const std::filesystem::path& path);

/// Canonical text: declarations, then transitions ordered by label, state and
/// pool index; each atom's weight is written on its first state.
std::string serialize_model(const Nlmp& m, bool lmp_header = false);
std::string serialize_model(const ModelDocument& doc);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string model_digest(const ModelDocument& doc);

}  // namespace nlmp
