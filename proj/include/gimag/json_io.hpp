#pragma once

#include <string>

#include <json.hpp>

#include "gimag/channel.hpp"
#include "gimag/fock_oracle.hpp"
#include "gimag/gaussian_state.hpp"
#include "gimag/measures.hpp"

namespace gimag::io {

using json = nlohmann::json;

/// {"modes": N, "mean": [2N], "cov": [[2N x 2N]]}, row-major.
json state_to_json(const GaussianState& state);
GaussianState state_from_json(const json& j, const Tolerances& tol = {});

/// {"modes": N, "d": [2N], "T": [[...]], "N": [[...]]}.
json channel_to_json(const GaussianChannel& channel);
GaussianChannel channel_from_json(const json& j, const Tolerances& tol = {});

/// The report fields plus the input state under "state".
json report_to_json(const MeasureReport& report, const GaussianState& state);

/// {"modes": n, "cutoff": D, "re": [[...]], "im": [[...]]}.
json fock_to_json(const FockMatrix& fm);

/// Reads and parses a JSON file; throws gimag::Error(invalid_argument).
json read_json_file(const std::string& path);

}  // namespace gimag::io
