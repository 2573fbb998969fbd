#ifndef LEXDB_FIXTURES_HPP
#define LEXDB_FIXTURES_HPP

#include <string>
#include <vector>

#include "lexdb/bias.hpp"
#include "lexdb/concept_store.hpp"

namespace lexdb::fixtures {

// Forms of rice in en, fr, it, sw and ja: rice (ukc:C1), cooked rice (C2),
// uncooked rice (C3), rice in the husk (C4), with a Japanese local concept
// for brown rice under uncooked rice.
ConceptStore rice();

// Rice plus a kinship domain (siblings by sex and relative age, cousins)
// over en, fr, it, sw, ja, hu and mn.
ConceptStore rice_and_kinship();

// German and Italian as trade languages, Mòcheno (mhn) as a local one.
ConceptStore alpine();

// Ten (machine translation, reference) concept pairs from the kinship
// domain of rice_and_kinship().
std::vector<DistancePair> kinship_translation_pairs(const ConceptStore& store);

// The published translation-quality vector behind the bias example.
std::vector<PerfRecord> translation_perf_records();

// Named fixtures for the CLI generator.
std::vector<std::string> fixture_names();
ConceptStore by_name(const std::string& name);

}  // namespace lexdb::fixtures

#endif
