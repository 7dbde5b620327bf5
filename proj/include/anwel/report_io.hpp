#pragma once

#include <string>
#include <vector>

#include "anwel/counts.hpp"

namespace anwel {

// Serialization of count reports, invariance verdicts and the closed-form
// table. All emitters are deterministic: fixed field order, doubles printed
// with %.17g (17 significant digits round-trip exactly), map-backed parts in
// sorted order. Identical inputs give byte-identical output.

std::string emit_json(const CountReport& rep);
std::string emit_json(const InvarianceVerdict& verdict);
std::string emit_json(const std::vector<TableRow>& rows);

std::string emit_text(const CountReport& rep);
std::string emit_text(const InvarianceVerdict& verdict);
std::string emit_text(const std::vector<TableRow>& rows);

// Header pinned to n,form,stratum,mt_computed,mt_formula,W_computed,W_formula.
std::string emit_csv(const std::vector<TableRow>& rows);

bool all_rows_match(const std::vector<TableRow>& rows);

// Inverse of emit_json(CountReport) over the serialized fields. The slice /
// line descriptors are not part of the wire format, so the parsed report
// re-emits byte-identically but does not reproduce them.
CountReport parse_count_report(const std::string& json_text);

}  // namespace anwel
