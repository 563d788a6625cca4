#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zigzag/ap_expression.hpp"
#include "zigzag/engine.hpp"

namespace zigzag::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one subcommand. args excludes the program name. Documents go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The predict document: the representation fields of to_json(rep) merged
/// with p, k, ap, v, provenance, case, b, tau, t, notes.
nlohmann::json prediction_json(const Prediction& prediction, const std::string& ap);

/// Markdown summary of a prediction followed by the chotomy timeline for b.
std::string prediction_markdown(const Prediction& prediction, const std::string& ap);

/// Label of the region of τ − t represented by delta for the chotomy of b.
std::string region_label(std::int64_t b, Valuation delta);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace zigzag::cli
