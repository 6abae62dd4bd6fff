#include "goldgen/schema.hpp"

#include <cmath>

#include "goldgen/errors.hpp"
#include "goldgen/schema_text.hpp"

namespace goldgen {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "number") return v.is_number();
  if (t == "integer") {
    if (v.is_number_integer()) return true;
    if (v.is_number_float()) {
      double d = v.get<double>();
      return std::isfinite(d) && d == std::floor(d);
    }
    return false;
  }
  throw ConfigError("schema: unsupported type '" + t + "'");
}

struct Validator {
  const json& root;
  std::vector<SchemaViolation> out;

  const json& resolve(const std::string& ref) const {
    if (ref.rfind("#", 0) != 0) throw ConfigError("schema: only local $ref is supported: " + ref);
    return root.at(json::json_pointer(ref.substr(1)));
  }

  void fail(const std::string& where, std::string what) {
    out.push_back({where.empty() ? "/" : where, std::move(what)});
  }

  void run(const json& v, const json& s, const std::string& where) {
    if (s.contains("$ref")) {
      run(v, resolve(s["$ref"].get<std::string>()), where);
      return;
    }
    if (s.contains("type")) {
      const json& t = s["type"];
      bool ok = false;
      if (t.is_string()) ok = has_type(v, t.get<std::string>());
      else
        for (const auto& e : t) ok = ok || has_type(v, e.get<std::string>());
      if (!ok) {
        fail(where, "expected type " + t.dump() + ", got " + v.type_name());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) fail(where, "value " + v.dump() + " not in " + s["enum"].dump());
    }
    if (s.contains("anyOf")) {
      bool any = false;
      for (const auto& alt : s["anyOf"]) {
        Validator sub{root, {}};
        sub.run(v, alt, where);
        if (sub.out.empty()) {
          any = true;
          break;
        }
      }
      if (!any) fail(where, "value " + v.dump() + " matches none of the allowed forms");
    }
    if (v.is_number()) {
      double d = v.get<double>();
      if (s.contains("minimum") && d < s["minimum"].get<double>())
        fail(where, "must be >= " + s["minimum"].dump());
      if (s.contains("maximum") && d > s["maximum"].get<double>())
        fail(where, "must be <= " + s["maximum"].dump());
      if (s.contains("exclusiveMinimum") && !(d > s["exclusiveMinimum"].get<double>()))
        fail(where, "must be > " + s["exclusiveMinimum"].dump());
    }
    if (v.is_string() && s.contains("minLength") &&
        v.get<std::string>().size() < s["minLength"].get<std::size_t>())
      fail(where, "string too short");
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
        fail(where, "needs at least " + s["minItems"].dump() + " items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
        fail(where, "allows at most " + s["maxItems"].dump() + " items");
      if (s.contains("items"))
        for (std::size_t k = 0; k < v.size(); ++k) run(v[k], s["items"], where + "/" + std::to_string(k));
    }
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& key : s["required"])
          if (!v.contains(key.get<std::string>())) fail(where, "missing required field " + key.dump());
      const json* props = s.contains("properties") ? &s["properties"] : nullptr;
      for (auto it = v.begin(); it != v.end(); ++it) {
        const std::string sub = where + "/" + it.key();
        if (props && props->contains(it.key())) run(it.value(), (*props)[it.key()], sub);
        else if (s.contains("additionalProperties") && s["additionalProperties"] == false)
          fail(sub, "unknown field");
      }
    }
  }
};

}  // namespace

std::vector<SchemaViolation> validate_schema(const json& instance, const json& schema) {
  Validator v{schema, {}};
  v.run(instance, schema, "");
  return std::move(v.out);
}

const json& run_config_schema() {
  static const json schema = json::parse(detail::kRunConfigSchema);
  return schema;
}

}  // namespace goldgen
