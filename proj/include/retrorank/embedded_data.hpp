#pragma once

#include <string_view>

// Contents of data/ compiled into the library at configure time.
namespace retrorank::embedded {

extern const std::string_view stopwords;
extern const std::string_view positive_lexicon;
extern const std::string_view negative_lexicon;

}  // namespace retrorank::embedded
