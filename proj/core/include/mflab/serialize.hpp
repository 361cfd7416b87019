#pragma once
#include "mflab/ct_toolkit.hpp"
#include "mflab/endo_probe.hpp"

#include "json.hpp"

namespace mflab {

using json = nlohmann::ordered_json;

inline constexpr const char* artifact_version = "0.1.0";

/* Reproducibility envelope embedded in every report. */
struct RunMeta {
    uint32_t p = 0;
    std::vector<std::string> vars;
    std::vector<int> schedule;
    uint64_t seed = 0;
};

json to_json(const RunMeta& m);

json to_json(const Poly& p);
json to_json(const PolyMat& m);
json to_json(const MatrixFactorization& m);
json to_json(const ExtResult& r);
json to_json(const TorsionReport& r);
json to_json(const Fingerprint& f);
json to_json(const IsoWitness& w);
json to_json(const PushforwardResult& r);
json to_json(const PairCheck& c);
json to_json(const CatalogCheck& c);
json to_json(const CTReport& r);
json to_json(const EndRing& e);
json to_json(const ApproxStep& s);
json to_json(const ApproxResolution& r);
json to_json(const PdResult& r);
json to_json(const DualityCheck& c);
json to_json(const PerpEntry& e);

/* Wraps a payload with the envelope and the artifact version. */
json report(const RunMeta& meta, const std::string& kind, json payload);

/* {"p":..., "vars":[...], "f":"...", "phi":[[...]], "psi":[[...]]};
 * entries are polynomial text. Validated on load. */
json mf_to_json(const MatrixFactorization& m);
MatrixFactorization mf_from_json(const json& doc);

}  // namespace mflab
