#pragma once

#include <string>
#include <string_view>

namespace semcom {

/// Porter stemmer, matching the behaviour of the author's reference C
/// implementation (including the `bli`/`logi` departures). Words of length
/// <= 2 and words that are not lowercase ASCII letters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace semcom
