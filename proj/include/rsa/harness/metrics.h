// Copyright 2026 The RSA-Sim Authors
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


#ifndef RSA_HARNESS_METRICS_H_
#define RSA_HARNESS_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rsa/learn/model.h"

namespace rsa::harness {

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the denominator is zero; the score is then reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
  std::size_t support = 0;  // actual examples of the class
};

struct Metrics {
  std::vector<std::string> classes;
  // confusion[actual][predicted]
  std::vector<std::vector<std::size_t>> confusion;
  std::size_t total = 0;
  double accuracy = 0.0;
  std::vector<ClassScores> per_class;
  // Unweighted means over classes, undefined scores counted as 0.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

// Index of the largest value; ties go to the lowest index.
int argmax(std::span<const double> values);

// Throws InvalidArgument for a non-square matrix or a size mismatch.
Metrics metrics_from_confusion(std::vector<std::string> classes,
                               std::vector<std::vector<std::size_t>> confusion);

Metrics metrics_from_predictions(std::vector<std::string> classes, std::span<const int> actual,
                                 std::span<const int> predicted);

// Predicts argmax of the class probabilities for every example. Throws
// InvalidArgument for an empty dataset or a label space that differs from
// the model head.
Metrics evaluate(const learn::ClassifierModel& model, const learn::DomainDataset& dataset);

// Header "class,precision,recall,f1", one row per class, then a "macro" row.
std::string report_csv(const Metrics& metrics);
// Header "actual,<class>...", one row per actual class.
std::string confusion_csv(const Metrics& metrics);

}  // namespace rsa::harness

#endif  // RSA_HARNESS_METRICS_H_
