#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "okrank/series.hpp"

namespace okrank {

enum class Ring { integer, rational };

std::string to_string(Ring r);

/// Either side of an identity. Scalar series are lifted to marker polynomials
/// with no markers, so every comparison runs on one of two types.
using AnySeries = std::variant<Series<ZPoly>, Series<QPoly>>;

struct IdentityCase {
    std::string id;
    Ring ring = Ring::integer;
    std::string markers; // subset of "za"
    int default_order = 0;
    std::string anchor;  // the identity in plain text
    std::function<AnySeries(int)> lhs;
    std::function<AnySeries(int)> rhs;
};

struct MismatchReport {
    int q_exp = 0;
    int z_exp = 0;
    int a_exp = 0;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::string id;
    int order = 0;
    std::optional<MismatchReport> mismatch;
    double ms = 0;

    bool equal() const { return !mismatch.has_value(); }
};

nlohmann::json to_json(const VerificationReport& r);

/// The fixed registry, in a stable order.
const std::vector<IdentityCase>& identity_registry();

std::vector<std::string> list_identities();

/// Throws UsageError for an unknown id.
const IdentityCase& find_identity(const std::string& id);

struct VerifyOptions {
    std::optional<int> order;
    /// Adds q^e to the left side before comparing; harness self-test only.
    std::optional<int> perturb_exponent;
};

VerificationReport verify(const std::string& id, const VerifyOptions& opts = {});

/// Runs every case at max(1, round(scale * default_order)) on up to `jobs`
/// threads; reports come back in registry order.
std::vector<VerificationReport> verify_all(double scale = 1.0, int jobs = 1);

} // namespace okrank
