#pragma once

// JSON readers and writers. Rationals are "num/den" strings; bundles use
// integer c_num / c_den pairs so their identity stays exact.

#include "arithvol/error.hpp"
#include "arithvol/experiments.hpp"

#include <json.hpp>

#include <string>

namespace arithvol {

using Json = nlohmann::json;

void to_json(Json& j, const HermitianLineBundle& b);
void from_json(const Json& j, HermitianLineBundle& b);
void to_json(Json& j, const Flag& f);
void from_json(const Json& j, Flag& f);
void to_json(Json& j, const FlagSpec& f);
void from_json(const Json& j, FlagSpec& f);
void to_json(Json& j, const EffectiveSectionSet& s);
void from_json(const Json& j, EffectiveSectionSet& s);
void to_json(Json& j, const NuBounds& b);
void from_json(const Json& j, NuBounds& b);
void to_json(Json& j, const ValuationImage& v);
void from_json(const Json& j, ValuationImage& v);
void to_json(Json& j, const RationalPolytope& P);
void from_json(const Json& j, RationalPolytope& P);
void to_json(Json& j, const Enclosure& e);
void from_json(const Json& j, Enclosure& e);
void to_json(Json& j, const BrunnMinkowskiReport& r);
void from_json(const Json& j, BrunnMinkowskiReport& r);
void to_json(Json& j, const OkounkovApprox& a);
void from_json(const Json& j, OkounkovApprox& a);
void to_json(Json& j, const IntersectionValue& v);
void from_json(const Json& j, IntersectionValue& v);
void to_json(Json& j, const InequalityCheck& c);
void from_json(const Json& j, InequalityCheck& c);
void to_json(Json& j, const CorollaryReport& r);
void from_json(const Json& j, CorollaryReport& r);
void to_json(Json& j, const ExperimentConfig& c);
void from_json(const Json& j, ExperimentConfig& c);
void to_json(Json& j, const TheoremAReport& r);
void from_json(const Json& j, TheoremAReport& r);
void to_json(Json& j, const LogShift& a);
void from_json(const Json& j, LogShift& a);
void to_json(Json& j, const RescalingReport& r);
void from_json(const Json& j, RescalingReport& r);
void to_json(Json& j, const ReductionReport& r);
void from_json(const Json& j, ReductionReport& r);
void to_json(Json& j, const CompatibilityReport& r);
void from_json(const Json& j, CompatibilityReport& r);
void to_json(Json& j, const FujitaReport& r);
void from_json(const Json& j, FujitaReport& r);
void to_json(Json& j, const TheoremBReport& r);
void from_json(const Json& j, TheoremBReport& r);
void to_json(Json& j, const SuiteReport& r);
void from_json(const Json& j, SuiteReport& r);

/// Parses JSON text, mapping syntax and schema errors to InvalidArgument.
Json parse_json(const std::string& text);

template <class T>
T read_as(const Json& j) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
    }
}

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string to_string(ImageMode mode);
ImageMode parse_image_mode(const std::string& text);

}  // namespace arithvol
