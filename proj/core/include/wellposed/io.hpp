#pragma once

#include <filesystem>
#include <string>

#include "wellposed/lax_phillips.hpp"
#include "wellposed/system.hpp"

namespace wellposed {

struct ParsedSystem {
  SystemDescription description;
  // Compact, key-sorted re-serialisation; hashed into certificate digests.
  std::string canonical;
};

// JSON system description:
//   {"eigenvalues": [[re, im], ...], "control": [[[re, im], ...], ...],
//    "observation": [...], "feedthrough": [...], "shift": s,
//    "stability": {"K": K, "omega": w}, "builtin": "heat" | null,
//    "modes": N, "tail": {...}, "exact": bool}
// Complex entries may also be plain numbers. "tail" is
//   {"kind": "inverse_quadratic", "coefficient": a, "offset": s} or
//   {"kind": "power", "coefficient": a, "exponent": q}.
// Throws SchemaError on malformed input.
ParsedSystem parse_system_description(const std::string& text);
ParsedSystem read_system_description(const std::filesystem::path& path);

// Envelope {"dt": h, "pastOutput": "past.csv", "futureInput": "future.csv",
// "state": [[re, im], ...]}; CSV paths are relative to the envelope.
ExtendedState read_extended_state(const std::filesystem::path& envelope);
// Writes <stem>_past.csv and <stem>_future.csv next to the envelope.
void write_extended_state(const std::filesystem::path& envelope,
                          const ExtendedState& xs);

}  // namespace wellposed
