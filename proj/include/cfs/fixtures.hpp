#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace cfs {

/// Text of a bundled `.cfs` fixture (exam, star, disease, disease-asym,
/// dormant, exam-cycle, coin), or nullopt for an unknown name.
std::optional<std::string_view> fixture_text(std::string_view name);

std::vector<std::string_view> fixture_names();

}  // namespace cfs
