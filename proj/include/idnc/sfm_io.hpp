#pragma once

#include <string>

#include "idnc/model.hpp"

namespace idnc {

// JSON demand-matrix format:
//   {"receivers": N, "packets": K, "rows": [[0,1,...], ...]}
// CSV alternative: one row of comma-separated 0/1 per receiver.
// Writers are canonical so a read-write cycle is byte-stable.

StateFeedbackMatrix parse_sfm_json(const std::string& text);
StateFeedbackMatrix parse_sfm_csv(const std::string& text);

std::string sfm_to_json(const StateFeedbackMatrix& sfm);
std::string sfm_to_csv(const StateFeedbackMatrix& sfm);

// Reads a file, picking the parser from the extension (.json/.csv) or, for
// other names, from the first non-space byte.
StateFeedbackMatrix read_sfm_file(const std::string& path);

}  // namespace idnc
