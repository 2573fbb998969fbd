#ifndef LEXDB_IDS_HPP
#define LEXDB_IDS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace lexdb {

// Store-assigned identifier. Values start at 1 and grow monotonically per
// entity kind; 0 is never a valid id.
template <class Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  constexpr bool valid() const { return value != 0; }
  constexpr std::size_t index() const { return value - 1; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

  friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

using LanguageId = StrongId<struct LanguageTag>;
using InterlingualId = StrongId<struct InterlingualTag>;
using ConceptId = StrongId<struct LanguageConceptTag>;
using SenseId = StrongId<struct SenseTag>;

}  // namespace lexdb

template <class Tag>
struct std::hash<lexdb::StrongId<Tag>> {
  std::size_t operator()(lexdb::StrongId<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

#endif
