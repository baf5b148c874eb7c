#pragma once

#include <string>
#include <string_view>

namespace retrorank {

/// Classic Porter (1980) suffix stripper, exactly as published (no short-word guard).
/// Input containing anything other than a-z is returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace retrorank
