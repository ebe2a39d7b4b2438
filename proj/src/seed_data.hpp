#pragma once

namespace logicscan {

// Built-in defaults used when the config leaves category_map / dictionary
// paths empty. data/categories.json and data/synonyms.json ship the same
// content for users who want to start curating from the defaults; a unit
// test keeps the two in sync.
extern const char* const kSeedCategoryMapJson;
extern const char* const kSeedDictionaryJson;

}  // namespace logicscan
