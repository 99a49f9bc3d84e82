#include "slmn/tensorio.hpp"

#include <json.hpp>

namespace slmn {

using nlohmann::ordered_json;

std::string tensor_to_json(const SuperTensor& t) {
  ordered_json j;
  j["m"] = t.mn().m;
  j["n"] = t.mn().n;
  ordered_json sig = ordered_json::array();
  for (Slot s : t.signature()) sig.push_back(s == Slot::V ? "V" : "V*");
  j["signature"] = sig;
  ordered_json entries = ordered_json::array();
  for (TKey k : t.sorted_keys()) {
    ordered_json idx = ordered_json::array();
    for (int s = 0; s < t.slots(); ++s) idx.push_back(tkey_get(k, s) + 1);
    entries.push_back(ordered_json::array({idx, rat_str(t.at(k))}));
  }
  j["entries"] = entries;
  return j.dump();
}

SuperTensor tensor_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Dims mn(j.at("m").get<int>(), j.at("n").get<int>());
  Signature sig;
  for (const auto& s : j.at("signature")) {
    std::string name = s.get<std::string>();
    if (name == "V")
      sig.push_back(Slot::V);
    else if (name == "V*")
      sig.push_back(Slot::Vd);
    else
      throw std::invalid_argument("tensor_from_json: bad slot tag '" + name + "'");
  }
  SuperTensor t(mn, sig);
  for (const auto& e : j.at("entries")) {
    const auto& idx = e.at(0);
    if (static_cast<int>(idx.size()) != t.slots())
      throw std::invalid_argument("tensor_from_json: index arity mismatch");
    TKey k = 0;
    for (int s = 0; s < t.slots(); ++s) {
      int i = idx.at(s).get<int>() - 1;
      if (i < 0 || i >= mn.N()) throw std::invalid_argument("tensor_from_json: index out of range");
      k = tkey_set(k, s, i);
    }
    t.add(k, rat_parse(e.at(1).get<std::string>()));
  }
  return t;
}

}  // namespace slmn
