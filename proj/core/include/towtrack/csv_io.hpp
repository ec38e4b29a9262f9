#pragma once

#include <iosfwd>
#include <string>

#include "towtrack/harness.hpp"

namespace towtrack {

/// Fixed column order of the simulation log CSV.
const char* csv_header();

/// Writes one row per record, numbers with 9 significant digits. The output
/// depends only on the log, so identical runs produce byte-identical files.
void write_csv(const SimLog& log, std::ostream& out);
void write_csv(const SimLog& log, const std::string& path);

}  // namespace towtrack
