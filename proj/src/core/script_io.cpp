// Copyright 2026 The bmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bmetric/script_io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>

#include "bmetric/error.hpp"

namespace bmetric {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kAttrKey = "<xmlattr>";

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

/// One XML element being read, with its path for diagnostics.
class Element {
 public:
  Element(const pt::ptree& node, std::string path)
      : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  std::string text() const { return trim(node_.data()); }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(path_, message);
  }

  /// Rejects attributes outside `allowed`.
  void allow_attributes(std::initializer_list<std::string_view> allowed) const {
    auto attrs = node_.get_child_optional(std::string(kAttrKey));
    if (!attrs) return;
    for (const auto& [name, value] : *attrs) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == name;
      if (!ok) fail("unknown attribute '" + name + "'");
    }
  }

  std::optional<std::string> attribute(std::string_view name) const {
    auto attrs = node_.get_child_optional(std::string(kAttrKey));
    if (!attrs) return std::nullopt;
    auto v = attrs->get_optional<std::string>(std::string(name));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::string required_attribute(std::string_view name) const {
    auto v = attribute(name);
    if (!v || v->empty()) {
      fail("missing attribute '" + std::string(name) + "'");
    }
    return *v;
  }

  void require_no_text() const {
    if (!text().empty()) fail("unexpected text content '" + text() + "'");
  }

  /// Child elements (skipping the attribute bag) with their tag names.
  template <typename Fn>
  void for_each_child(Fn&& fn) const {
    for (const auto& [tag, child] : node_) {
      if (tag == kAttrKey) continue;
      fn(tag, child);
    }
  }

  std::string child_path(const std::string& tag,
                         const std::optional<std::string>& key = {}) const {
    std::string p = path_ + "/" + tag;
    if (key) p += "[" + *key + "]";
    return p;
  }

 private:
  const pt::ptree& node_;
  std::string path_;
};

double parse_unit_interval(const Element& e) {
  std::string text = e.text();
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    e.fail("expected a number, got '" + text + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    e.fail("value " + text + " outside [0, 1]");
  }
  return value;
}

long parse_count(const Element& e) {
  std::string text = e.text();
  long value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    e.fail("expected an integer, got '" + text + "'");
  }
  return value;
}

class ScriptReader {
 public:
  ParseResult read(std::string_view text) {
    pt::ptree doc;
    try {
      std::istringstream in{std::string(text)};
      pt::read_xml(in, doc,
                   pt::xml_parser::no_comments | pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& err) {
      throw ParseError("", "malformed XML: " + err.message(), err.line());
    }
    const pt::ptree* root = nullptr;
    for (const auto& [tag, child] : doc) {
      if (tag == kAttrKey) continue;
      if (tag != "Problem_Spec") {
        throw ParseError(tag, "unknown root element (expected Problem_Spec)");
      }
      if (root) throw ParseError(tag, "more than one root element");
      root = &child;
    }
    if (!root) throw ParseError("", "document has no Problem_Spec element");
    read_problem_spec(Element(*root, "Problem_Spec"));
    return std::move(result_);
  }

 private:
  void warn(std::string path, std::string rule, std::string message) {
    result_.warnings.push_back({Severity::kWarning, std::move(path),
                                std::move(rule), std::move(message)});
  }

  /// Sections that may appear at most once under one parent.
  class Once {
   public:
    void mark(const Element& parent, const std::string& tag) {
      if (!seen_.emplace(tag, true).second) {
        parent.fail("duplicate element '" + tag + "'");
      }
    }

   private:
    std::map<std::string, bool> seen_;
  };

  void read_problem_spec(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    Once once;
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      if (tag == "Problem") {
        once.mark(e, tag);
        read_problem(Element(node, e.child_path(tag)));
      } else if (tag == "Entities") {
        once.mark(e, tag);
        read_entities(Element(node, e.child_path(tag)));
      } else if (tag == "Entity_Types" || tag == "Entitiy_Types") {
        once.mark(e, "Entity_Types");
        Element child(node, e.child_path(tag));
        if (tag == "Entitiy_Types") {
          warn(child.path(), "legacy element name",
               "legacy element name 'Entitiy_Types' accepted as "
               "'Entity_Types'");
        }
        read_entity_types(child);
      } else if (tag == "Behaviours") {
        once.mark(e, tag);
        read_behaviours(Element(node, e.child_path(tag)));
      } else {
        Element(node, e.child_path(tag)).fail("unknown element '" + tag + "'");
      }
    });
  }

  void read_problem(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    Once once;
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element child(node, e.child_path(tag));
      if (tag == "Problem_Complexity") {
        once.mark(e, tag);
        read_problem_complexity(child);
      } else if (tag == "Problem_Behaviour_Set") {
        once.mark(e, tag);
        read_behaviour_set(child);
      } else if (tag == "Problem_Entities") {
        once.mark(e, tag);
        read_problem_entities(child);
      } else {
        child.fail("unknown element '" + tag + "'");
      }
    });
  }

  void read_problem_complexity(const Element& e) {
    e.allow_attributes({"Value"});
    e.require_no_text();
    if (auto v = e.attribute("Value")) {
      double pc = 0.0;
      auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), pc);
      if (v->empty() || ec != std::errc() || ptr != v->data() + v->size()) {
        e.fail("Value: expected a number, got '" + *v + "'");
      }
      if (!(pc > 0.0 && pc <= 1.0)) e.fail("Value " + *v + " outside (0, 1]");
      result_.spec.problem_complexity = pc;
    }
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      if (tag != "Problem_Task") {
        Element(node, e.child_path(tag)).fail("unknown element '" + tag + "'");
      }
      Element probe(node, e.child_path(tag));
      std::string name = probe.required_attribute("Name");
      read_task(Element(node, e.child_path(tag, name)), name);
    });
  }

  void read_task(const Element& e, std::string name) {
    e.allow_attributes({"Name"});
    e.require_no_text();
    ProblemTask task;
    task.name = std::move(name);
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      if (tag != "Problem_Behaviour") {
        Element(node, e.child_path(tag)).fail("unknown element '" + tag + "'");
      }
      std::string type = Element(node, e.child_path(tag)).required_attribute("Type");
      Element req(node, e.child_path(tag, type));
      req.allow_attributes({"Type"});
      req.require_no_text();
      task.requirements.push_back(
          {type, read_entity_number(req)});
    });
    result_.spec.tasks.push_back(std::move(task));
  }

  /// Exactly one Entity_Number child.
  long read_entity_number(const Element& e) {
    std::optional<long> number;
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element child(node, e.child_path(tag));
      if (tag != "Entity_Number") child.fail("unknown element '" + tag + "'");
      if (number) e.fail("duplicate element 'Entity_Number'");
      child.allow_attributes({});
      number = parse_count(child);
    });
    if (!number) e.fail("missing element 'Entity_Number'");
    return *number;
  }

  void read_behaviour_set(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element probe(node, e.child_path(tag));
      if (tag != "Behaviour") probe.fail("unknown element '" + tag + "'");
      std::string type = probe.required_attribute("Type");
      Element child(node, e.child_path(tag, type));
      child.allow_attributes({"Type"});
      child.require_no_text();
      child.for_each_child([&](const std::string& t, const pt::ptree&) {
        child.fail("unknown element '" + t + "'");
      });
      result_.spec.problem_behaviour_set.push_back(type);
    });
  }

  void read_problem_entities(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element probe(node, e.child_path(tag));
      if (tag != "Entity") probe.fail("unknown element '" + tag + "'");
      std::string type = probe.required_attribute("Type");
      Element child(node, e.child_path(tag, type));
      child.allow_attributes({"Type"});
      child.require_no_text();
      result_.spec.problem_entities.push_back({type, read_entity_number(child)});
    });
  }

  void read_entities(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element probe(node, e.child_path(tag));
      if (tag != "Entity") probe.fail("unknown element '" + tag + "'");
      std::string name = probe.required_attribute("Name");
      Element child(node, e.child_path(tag, name));
      child.allow_attributes({"Name", "Type"});
      child.require_no_text();
      child.for_each_child([&](const std::string& t, const pt::ptree&) {
        child.fail("unknown element '" + t + "'");
      });
      result_.spec.entities.push_back({name, child.required_attribute("Type")});
    });
  }

  void read_entity_types(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element probe(node, e.child_path(tag));
      if (tag != "Entity_Type") probe.fail("unknown element '" + tag + "'");
      EntityType type;
      type.name = probe.required_attribute("Name");
      Element child(node, e.child_path(tag, type.name));
      child.allow_attributes({"Name"});
      child.require_no_text();
      Once once;
      child.for_each_child([&](const std::string& t, const pt::ptree& n) {
        Element list(n, child.child_path(t));
        if (t != "Entity_Behaviours") list.fail("unknown element '" + t + "'");
        once.mark(child, t);
        list.allow_attributes({});
        list.require_no_text();
        list.for_each_child([&](const std::string& bt, const pt::ptree& bn) {
          Element item(bn, list.child_path(bt));
          if (bt != "Behaviour_Type") item.fail("unknown element '" + bt + "'");
          item.allow_attributes({});
          if (item.text().empty()) item.fail("empty behaviour type");
          type.behaviours.push_back(item.text());
        });
      });
      result_.spec.entity_types.push_back(std::move(type));
    });
  }

  void read_behaviours(const Element& e) {
    e.allow_attributes({});
    e.require_no_text();
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element probe(node, e.child_path(tag));
      if (tag != "Behaviour") probe.fail("unknown element '" + tag + "'");
      std::string type = probe.required_attribute("Type");
      read_behaviour(Element(node, e.child_path(tag, type)), type);
    });
  }

  /// Records that an attribute element was seen, rejecting repeats.
  struct AttributeSlots {
    std::array<bool, 6> seen{};
    void mark(const Element& e, Attribute a) {
      auto& s = seen[static_cast<std::size_t>(a)];
      if (s) e.fail("duplicate attribute element");
      s = true;
    }
  };

  AttributeValue read_attribute_value(const Element& e) {
    e.allow_attributes({"Kind"});
    e.for_each_child([&](const std::string& t, const pt::ptree&) {
      e.fail("unknown element '" + t + "'");
    });
    std::string kind = e.attribute("Kind").value_or("Constant");
    if (kind == "Constant") return AttributeValue::constant(parse_unit_interval(e));
    if (kind == "Expression") {
      std::string text = e.text();
      if (text.empty()) e.fail("empty expression");
      try {
        return AttributeValue::expression(parse_expression(text));
      } catch (const ExpressionSyntaxError& err) {
        e.fail(std::string("expression syntax error ") + err.what());
      }
    }
    e.fail("Kind must be 'Constant' or 'Expression', got '" + kind + "'");
  }

  void read_behaviour(const Element& e, std::string type) {
    e.allow_attributes({"Type"});
    e.require_no_text();
    BehaviourDef def;
    def.type_name = std::move(type);
    AttributeSlots slots;
    Once once;
    auto set = [&](const Element& el, Attribute a) {
      slots.mark(el, a);
      def.attributes[a] = read_attribute_value(el);
    };
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element child(node, e.child_path(tag));
      if (tag == "Ability") {
        set(child, Attribute::kAbility);
      } else if (tag == "Flexibility") {
        set(child, Attribute::kFlexibility);
      } else if (tag == "Collective") {
        once.mark(e, tag);
        read_collective(child, set);
      } else if (tag == "Requires") {
        once.mark(e, tag);
        read_requires(child, def);
      } else {
        child.fail("unknown element '" + tag + "'");
      }
    });
    result_.spec.behaviours.push_back(std::move(def));
  }

  template <typename Set>
  void read_collective(const Element& e, Set& set) {
    e.allow_attributes({});
    e.require_no_text();
    Once once;
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element child(node, e.child_path(tag));
      if (tag == "Coordination") {
        set(child, Attribute::kCoordination);
      } else if (tag == "Cooperation") {
        set(child, Attribute::kCooperation);
      } else if (tag == "Communication") {
        once.mark(e, tag);
        child.allow_attributes({});
        child.require_no_text();
        child.for_each_child([&](const std::string& t, const pt::ptree& n) {
          Element signal(n, child.child_path(t));
          if (t == "Signal_In") {
            set(signal, Attribute::kSignalIn);
          } else if (t == "Signal_Out") {
            set(signal, Attribute::kSignalOut);
          } else {
            signal.fail("unknown element '" + t + "'");
          }
        });
      } else {
        child.fail("unknown element '" + tag + "'");
      }
    });
  }

  void read_requires(const Element& e, BehaviourDef& def) {
    e.allow_attributes({});
    e.require_no_text();
    e.for_each_child([&](const std::string& tag, const pt::ptree& node) {
      Element probe(node, e.child_path(tag));
      if (tag != "Behaviour_Type") probe.fail("unknown element '" + tag + "'");
      Element item(node, e.child_path(tag, probe.text()));
      item.allow_attributes({"AndOr", "PosNeg"});
      item.for_each_child([&](const std::string& t, const pt::ptree&) {
        item.fail("unknown element '" + t + "'");
      });
      SubBehaviourRef ref;
      ref.target = item.text();
      if (ref.target.empty()) item.fail("empty behaviour type");
      std::string and_or = item.attribute("AndOr").value_or("And");
      if (and_or == "And") {
        ref.combinator = Combinator::kRequired;
      } else if (and_or == "Or") {
        ref.combinator = Combinator::kAlternative;
      } else {
        item.fail("AndOr must be 'And' or 'Or', got '" + and_or + "'");
      }
      std::string pos_neg = item.attribute("PosNeg").value_or("Positive");
      if (pos_neg == "Positive") {
        ref.polarity = Polarity::kPositive;
      } else if (pos_neg == "Negative") {
        ref.polarity = Polarity::kNegative;
      } else {
        item.fail("PosNeg must be 'Positive' or 'Negative', got '" + pos_neg +
                  "'");
      }
      def.sub_behaviours.push_back(std::move(ref));
    });
  }

  ParseResult result_;
};

// ---------------------------------------------------------------------------
// Writing

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

pt::ptree& add(pt::ptree& parent, const std::string& tag) {
  return parent.add_child(tag, pt::ptree());
}

void put_attribute(pt::ptree& node, const std::string& name,
                   const std::string& value) {
  node.put(pt::ptree::path_type(std::string(kAttrKey) + "/" + name, '/'),
           value);
}

void write_value(pt::ptree& parent, Attribute a, const AttributeValue& v) {
  pt::ptree& node = add(parent, std::string(attribute_name(a)));
  if (v.is_constant()) {
    node.put_value(format_number(v.constant_value()));
  } else {
    put_attribute(node, "Kind", "Expression");
    node.put_value(v.expression_value().to_string());
  }
}

}  // namespace

ParseResult parse_script(std::string_view text) {
  return ScriptReader().read(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return buf.str();
}

ParseResult parse_script_file(const std::filesystem::path& path) {
  return parse_script(read_text_file(path));
}

std::string serialize_script(const ProblemSpec& spec) {
  pt::ptree doc;
  pt::ptree& root = add(doc, "Problem_Spec");

  pt::ptree& problem = add(root, "Problem");
  pt::ptree& complexity = add(problem, "Problem_Complexity");
  put_attribute(complexity, "Value", format_number(spec.problem_complexity));
  for (const auto& task : spec.tasks) {
    pt::ptree& t = add(complexity, "Problem_Task");
    put_attribute(t, "Name", task.name);
    for (const auto& req : task.requirements) {
      pt::ptree& r = add(t, "Problem_Behaviour");
      put_attribute(r, "Type", req.behaviour);
      add(r, "Entity_Number").put_value(std::to_string(req.entity_number));
    }
  }
  pt::ptree& set = add(problem, "Problem_Behaviour_Set");
  for (const auto& name : spec.problem_behaviour_set) {
    put_attribute(add(set, "Behaviour"), "Type", name);
  }
  pt::ptree& allocations = add(problem, "Problem_Entities");
  for (const auto& a : spec.problem_entities) {
    pt::ptree& node = add(allocations, "Entity");
    put_attribute(node, "Type", a.type);
    add(node, "Entity_Number").put_value(std::to_string(a.count));
  }

  pt::ptree& entities = add(root, "Entities");
  for (const auto& e : spec.entities) {
    pt::ptree& node = add(entities, "Entity");
    put_attribute(node, "Name", e.name);
    put_attribute(node, "Type", e.type);
  }

  pt::ptree& types = add(root, "Entity_Types");
  for (const auto& type : spec.entity_types) {
    pt::ptree& node = add(types, "Entity_Type");
    put_attribute(node, "Name", type.name);
    pt::ptree& list = add(node, "Entity_Behaviours");
    for (const auto& b : type.behaviours) {
      add(list, "Behaviour_Type").put_value(b);
    }
  }

  pt::ptree& behaviours = add(root, "Behaviours");
  for (const auto& def : spec.behaviours) {
    pt::ptree& node = add(behaviours, "Behaviour");
    put_attribute(node, "Type", def.type_name);
    write_value(node, Attribute::kAbility, def.attributes[Attribute::kAbility]);
    write_value(node, Attribute::kFlexibility,
                def.attributes[Attribute::kFlexibility]);
    pt::ptree& collective = add(node, "Collective");
    write_value(collective, Attribute::kCoordination,
                def.attributes[Attribute::kCoordination]);
    write_value(collective, Attribute::kCooperation,
                def.attributes[Attribute::kCooperation]);
    pt::ptree& comm = add(collective, "Communication");
    write_value(comm, Attribute::kSignalIn, def.attributes[Attribute::kSignalIn]);
    write_value(comm, Attribute::kSignalOut,
                def.attributes[Attribute::kSignalOut]);
    if (!def.sub_behaviours.empty()) {
      pt::ptree& requires_node = add(node, "Requires");
      for (const auto& ref : def.sub_behaviours) {
        pt::ptree& item = add(requires_node, "Behaviour_Type");
        put_attribute(item, "AndOr",
                      ref.combinator == Combinator::kRequired ? "And" : "Or");
        put_attribute(item, "PosNeg", ref.polarity == Polarity::kPositive
                                          ? "Positive"
                                          : "Negative");
        item.put_value(ref.target);
      }
    }
  }

  std::ostringstream out;
  pt::write_xml(out, doc, pt::xml_writer_make_settings<std::string>(' ', 2));
  return out.str();
}

}  // namespace bmetric
