#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "dwpap/bohr.hpp"
#include "dwpap/ergodic.hpp"
#include "dwpap/poly_classify.hpp"
#include "dwpap/schedule.hpp"
#include "dwpap/transforms.hpp"
#include "dwpap/weight_classes.hpp"

namespace dwpap {

// All reports serialize to ordered JSON so identical runs dump identical
// bytes.  Complex vectors become [[re, im], ...]; non-finite doubles fall
// back to null at dump time.
using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

ordered_json cvec_json(const CVec& v);

ordered_json to_json(const Schedule& s);
ordered_json to_json(const LimitVerdict& v);
ordered_json to_json(const ErgodicCurve& c);
ordered_json to_json(const Evidence& e);
ordered_json to_json(const TauLimits& l);
ordered_json to_json(const ClassReport& r);
ordered_json to_json(const PolyClassification& c);
ordered_json to_json(const ThetaResult& t);
ordered_json to_json(const MeanResult& m);
ordered_json to_json(const OscillationAverage& o);
ordered_json to_json(const MeanFactorizationCheck& c);
ordered_json to_json(const BohrCoefficient& b);
ordered_json to_json(const SpectrumPoint& p);
ordered_json to_json(const SpectrumSet& s);
ordered_json to_json(const CumulativeRatioLimit& l);
ordered_json to_json(const RatioSupCheck& c);
ordered_json to_json(const WindowRatioCheck& c);
ordered_json to_json(const UniquenessCheck& c);
ordered_json to_json(const PreconditionReport& p);
ordered_json to_json(const ConvMembershipResult& r);
ordered_json to_json(const TranslationCheck& t);
ordered_json to_json(const CompositionResult& r);

// Standard report wrapper: {command, inputs, schedule, results, version}.
ordered_json make_envelope(const std::string& command, ordered_json inputs, const Schedule& s,
                           ordered_json results);

// "T,R_re,R_im" rows (R0_re,R0_im,R1_re,... for vector curves), 17
// significant digits.  The path overload throws EngineError on IO failure.
void write_curve_csv(const ErgodicCurve& c, std::ostream& os);
void write_curve_csv(const ErgodicCurve& c, const std::string& path);

}  // namespace dwpap
