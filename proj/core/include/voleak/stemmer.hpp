#pragma once

#include <string>
#include <string_view>

namespace voleak {

// Porter's suffix-stripping algorithm (1980 version, with the two
// widely-adopted departures bli->ble and logi->log). Input is lowercased
// before stemming; words of length <= 2 come back unchanged.
std::string porter_stem(std::string_view word);

}  // namespace voleak
