#pragma once

#include <json.hpp>
#include <string>

#include "dga/bar.hpp"
#include "dga/dsl.hpp"
#include "dga/minmodel.hpp"

namespace dga {

// insertion ordered, so std::map iteration makes every document byte stable
using Json = nlohmann::ordered_json;

std::string bd_key(Bidegree bd);  // "n,r"

Json json_of(const SemisimpleObject& x);
Json json_of(const CheckReport& r);
Json json_of(const ConnectivityReport& r);
Json json_of(const Window& w);

// one document per CLI verb, each stamped with "schema": 1
Json check_document(const LoadedFile& lf);
Json cohomology_document(const std::string& name, const LevelwiseCdga& big, Window w);
Json bar_document(const std::string& name, const HopfTruncation& h);
Json gamma_document(const std::string& name, const CoLieData& g);
Json minimal_document(const std::string& name, const MinimalModelResult& r);
Json module_check_document(const std::string& name, const Connection& c);
Json module_heart_document(const std::string& name, const Connection& c);
Json module_truncate_document(const std::string& name, const Connection& c);
Json module_qiso_document(const std::string& name, const Connection& c);
Json ext_document(const std::string& name, const ExtResult& e, int k, int adams_max);
Json report_document(const LoadedFile& lf);

}  // namespace dga
