#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace piq {

enum class Aspect { Appearance, Posture, Emotion };

Aspect aspect_from_string(std::string_view s);           // throws ParseError
std::string_view aspect_to_string(Aspect a);

// One classification sub-task: a named label vocabulary plus its aspect.
struct TaskDef {
  std::string name;
  Aspect aspect = Aspect::Appearance;
  std::vector<std::string> labels;
  bool multi_label = false;

  int cardinality() const { return static_cast<int>(labels.size()); }
};

// The fixed task taxonomy: seven classification tasks in canonical order,
// plus the retrieval task. Only the label vocabularies are configurable.
struct TaskSchema {
  static constexpr int kNumTasks = 7;
  static constexpr std::array<std::string_view, kNumTasks> kTaskNames = {
      "gender", "age", "physique", "height", "body", "arm", "expression"};
  static constexpr int kExpressionIndex = 6;

  std::vector<TaskDef> tasks;  // always kNumTasks entries, canonical order
  bool reid_enabled = true;

  const TaskDef& task(std::string_view name) const;       // throws SchemaError
  static int task_index(std::string_view name);           // -1 if unknown
};

// Per-image ground truth. labels[t] holds label indices for task t in
// schema order; single-label tasks carry exactly one index. An empty
// person_id marks an unidentified sample.
struct SampleAnnotation {
  std::string image_id;
  std::string person_id;
  std::array<std::vector<int>, TaskSchema::kNumTasks> labels;
};

enum class Subset { Train, Query, Gallery };

Subset subset_from_string(std::string_view s);            // throws ParseError
std::string_view subset_to_string(Subset s);

struct DatasetSplit {
  std::unordered_map<std::string, Subset> membership;
};

struct Violation {
  std::string image_id;
  std::string message;
};

// Builds a TaskSchema from a JSON config document:
//   {"tasks": [{"name","aspect","labels","multi_label"}...], "reid_enabled": bool}
// Tasks may appear in any order in the document but must cover exactly the
// seven canonical names with their fixed aspect assignments; expression must
// be multi-label and everything else single-label.
TaskSchema load_schema(const std::string& json_text);
TaskSchema load_schema_file(const std::string& path);
std::string serialize_schema(const TaskSchema& schema);

// The shipped default: placeholder vocabularies of sizes 2/4/3/3/5/5/7.
TaskSchema default_schema();

// Checks every record and the split against the schema invariants. Returns
// the violation list sorted by (image_id, message); empty means clean.
std::vector<Violation> validate_annotations(const TaskSchema& schema,
                                            const std::vector<SampleAnnotation>& records,
                                            const DatasetSplit& split);

}  // namespace piq
