#pragma once

#include <json.hpp>

#include "fgl/landweber.hpp"
#include "fgl/weierstrass.hpp"

namespace fgl {

using json = nlohmann::json;

json descriptor_to_json(const DescPtr& d);
DescPtr descriptor_from_json(const json& j);

// {"vars":[...],"bound":N,"terms":[{"exp":[...],"coeff":"..."}]} with terms
// sorted ascending in graded-lex order (part of the format); a bare term
// list is also accepted on input given default vars and bound
json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const json& j, const RingPtr& ring,
                                 const std::vector<std::string>& default_vars = {},
                                 int default_bound = -1);

json curve_to_json(const WeierstrassCurve& C);
WeierstrassCurve curve_from_json(const json& j);

// law files: {"ring":<descriptor>,"bound":N,"spec":{...}}; the "elliptic"
// spec kind carries curve coefficients parsed in the file's ring
struct LawFile {
    DescPtr ring;
    int bound;
    LawSpec spec;
    std::optional<WeierstrassCurve> curve;
};
json law_to_json(const LawFile& f);
LawFile law_from_json(const json& j);
FormalGroupLaw build_law_from_json(const json& j, int bound_override = -1,
                                   const LawOptions& opts = {});

json height_report_to_json(const HeightReport& r);
json landweber_report_to_json(const LandweberReport& r);
json invariants_to_json(const CurveInvariants& inv);
json iso_result_to_json(const IsoSearchResult& r);

}  // namespace fgl
