#include "piq/schema.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "piq/errors.hpp"

namespace piq {

using json = nlohmann::ordered_json;

Aspect aspect_from_string(std::string_view s) {
  if (s == "appearance" || s == "Appearance") return Aspect::Appearance;
  if (s == "posture" || s == "Posture") return Aspect::Posture;
  if (s == "emotion" || s == "Emotion") return Aspect::Emotion;
  throw ParseError("unknown aspect: " + std::string(s));
}

std::string_view aspect_to_string(Aspect a) {
  switch (a) {
    case Aspect::Appearance: return "appearance";
    case Aspect::Posture: return "posture";
    case Aspect::Emotion: return "emotion";
  }
  return "?";
}

Subset subset_from_string(std::string_view s) {
  if (s == "train") return Subset::Train;
  if (s == "query") return Subset::Query;
  if (s == "gallery") return Subset::Gallery;
  throw ParseError("unknown subset: " + std::string(s));
}

std::string_view subset_to_string(Subset s) {
  switch (s) {
    case Subset::Train: return "train";
    case Subset::Query: return "query";
    case Subset::Gallery: return "gallery";
  }
  return "?";
}

const TaskDef& TaskSchema::task(std::string_view name) const {
  const int idx = task_index(name);
  if (idx < 0) throw SchemaError("unknown task: " + std::string(name));
  return tasks[static_cast<std::size_t>(idx)];
}

int TaskSchema::task_index(std::string_view name) {
  for (int i = 0; i < kNumTasks; ++i)
    if (kTaskNames[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

namespace {

Aspect expected_aspect(int task_index) {
  if (task_index <= 3) return Aspect::Appearance;  // gender, age, physique, height
  if (task_index <= 5) return Aspect::Posture;     // body, arm
  return Aspect::Emotion;                          // expression
}

void check_schema(const TaskSchema& schema) {
  if (schema.tasks.size() != TaskSchema::kNumTasks)
    throw SchemaError("schema must define exactly 7 classification tasks, got " +
                      std::to_string(schema.tasks.size()));
  for (int i = 0; i < TaskSchema::kNumTasks; ++i) {
    const TaskDef& t = schema.tasks[static_cast<std::size_t>(i)];
    const std::string_view want = TaskSchema::kTaskNames[static_cast<std::size_t>(i)];
    if (t.name != want)
      throw SchemaError("task " + std::to_string(i) + " must be named '" +
                        std::string(want) + "', got '" + t.name + "'");
    if (t.aspect != expected_aspect(i))
      throw SchemaError("task '" + t.name + "' has the wrong aspect");
    if (t.cardinality() < 2)
      throw SchemaError("task '" + t.name + "' needs at least 2 labels");
    std::set<std::string_view> seen;
    for (const auto& label : t.labels)
      if (!seen.insert(label).second)
        throw SchemaError("task '" + t.name + "' has duplicate label '" + label + "'");
    const bool want_multi = (i == TaskSchema::kExpressionIndex);
    if (t.multi_label != want_multi)
      throw SchemaError("task '" + t.name + "' must " + (want_multi ? "" : "not ") +
                        "be multi-label");
  }
}

}  // namespace

TaskSchema load_schema(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema config does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tasks") || !doc["tasks"].is_array())
    throw ParseError("schema config needs a top-level 'tasks' array");

  TaskSchema schema;
  schema.tasks.resize(TaskSchema::kNumTasks);
  std::array<bool, TaskSchema::kNumTasks> filled{};
  try {
    for (const auto& jt : doc["tasks"]) {
      TaskDef t;
      t.name = jt.at("name").get<std::string>();
      t.aspect = aspect_from_string(jt.at("aspect").get<std::string>());
      t.labels = jt.at("labels").get<std::vector<std::string>>();
      t.multi_label = jt.value("multi_label", false);
      const int idx = TaskSchema::task_index(t.name);
      if (idx < 0) throw SchemaError("unknown task name '" + t.name + "'");
      if (filled[static_cast<std::size_t>(idx)])
        throw SchemaError("duplicate task '" + t.name + "'");
      filled[static_cast<std::size_t>(idx)] = true;
      schema.tasks[static_cast<std::size_t>(idx)] = std::move(t);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad task entry: ") + e.what());
  }
  for (int i = 0; i < TaskSchema::kNumTasks; ++i)
    if (!filled[static_cast<std::size_t>(i)])
      throw SchemaError("schema is missing task '" +
                        std::string(TaskSchema::kTaskNames[static_cast<std::size_t>(i)]) + "'");
  schema.reid_enabled = doc.value("reid_enabled", true);
  check_schema(schema);
  return schema;
}

TaskSchema load_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_schema(buf.str());
}

std::string serialize_schema(const TaskSchema& schema) {
  json doc;
  doc["tasks"] = json::array();
  for (const auto& t : schema.tasks) {
    json jt;
    jt["name"] = t.name;
    jt["aspect"] = std::string(aspect_to_string(t.aspect));
    jt["labels"] = t.labels;
    jt["multi_label"] = t.multi_label;
    doc["tasks"].push_back(std::move(jt));
  }
  doc["reid_enabled"] = schema.reid_enabled;
  return doc.dump(2) + "\n";
}

TaskSchema default_schema() {
  auto make_labels = [](std::string_view task, int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      labels.push_back(std::string(task) + "_" + std::to_string(i));
    return labels;
  };
  TaskSchema schema;
  const std::array<int, TaskSchema::kNumTasks> sizes = {2, 4, 3, 3, 5, 5, 7};
  for (int i = 0; i < TaskSchema::kNumTasks; ++i) {
    TaskDef t;
    t.name = std::string(TaskSchema::kTaskNames[static_cast<std::size_t>(i)]);
    t.aspect = expected_aspect(i);
    t.labels = make_labels(t.name, sizes[static_cast<std::size_t>(i)]);
    t.multi_label = (i == TaskSchema::kExpressionIndex);
    schema.tasks.push_back(std::move(t));
  }
  schema.reid_enabled = true;
  check_schema(schema);
  return schema;
}

std::vector<Violation> validate_annotations(const TaskSchema& schema,
                                            const std::vector<SampleAnnotation>& records,
                                            const DatasetSplit& split) {
  std::vector<Violation> out;
  auto add = [&out](const std::string& image_id, std::string message) {
    out.push_back({image_id, std::move(message)});
  };

  std::set<std::string> image_ids;
  for (const auto& rec : records) {
    if (!image_ids.insert(rec.image_id).second)
      add(rec.image_id, "duplicate image_id");
    for (int t = 0; t < TaskSchema::kNumTasks; ++t) {
      const TaskDef& def = schema.tasks[static_cast<std::size_t>(t)];
      const auto& idxs = rec.labels[static_cast<std::size_t>(t)];
      if (def.multi_label) {
        if (idxs.empty()) add(rec.image_id, "task '" + def.name + "' needs at least one label");
      } else if (idxs.size() != 1) {
        add(rec.image_id, "task '" + def.name + "' needs exactly one label, got " +
                              std::to_string(idxs.size()));
      }
      for (int idx : idxs)
        if (idx < 0 || idx >= def.cardinality())
          add(rec.image_id, "task '" + def.name + "' label index " + std::to_string(idx) +
                                " out of range [0," + std::to_string(def.cardinality()) + ")");
      std::set<int> uniq(idxs.begin(), idxs.end());
      if (uniq.size() != idxs.size())
        add(rec.image_id, "task '" + def.name + "' has repeated label indices");
    }
  }

  // Split invariants over person ids.
  std::set<std::string> train_ids, query_ids, gallery_ids;
  std::unordered_map<std::string, const SampleAnnotation*> by_image;
  for (const auto& rec : records) by_image[rec.image_id] = &rec;
  for (const auto& [image_id, subset] : split.membership) {
    auto it = by_image.find(image_id);
    if (it == by_image.end()) {
      add(image_id, "split references unknown image_id");
      continue;
    }
    const std::string& pid = it->second->person_id;
    if (pid.empty()) continue;
    switch (subset) {
      case Subset::Train: train_ids.insert(pid); break;
      case Subset::Query: query_ids.insert(pid); break;
      case Subset::Gallery: gallery_ids.insert(pid); break;
    }
  }
  for (const auto& [image_id, subset] : split.membership) {
    auto it = by_image.find(image_id);
    if (it == by_image.end()) continue;
    const std::string& pid = it->second->person_id;
    if (pid.empty()) continue;
    if (subset == Subset::Query && !gallery_ids.count(pid))
      add(image_id, "query person_id '" + pid + "' absent from gallery");
    if (subset == Subset::Train && (query_ids.count(pid) || gallery_ids.count(pid)))
      add(image_id, "train person_id '" + pid + "' leaks into the test subsets");
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.image_id, a.message) < std::tie(b.image_id, b.message);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Violation& a, const Violation& b) {
                          return a.image_id == b.image_id && a.message == b.message;
                        }),
            out.end());
  return out;
}

}  // namespace piq
