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


#include "rsa/harness/metrics.h"

#include <cstdio>

#include "rsa/common/error.h"

namespace rsa::harness {

int argmax(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return static_cast<int>(best);
}

Metrics metrics_from_confusion(std::vector<std::string> classes,
                               std::vector<std::vector<std::size_t>> confusion) {
  const std::size_t n = classes.size();
  if (n == 0 || confusion.size() != n) {
    throw InvalidArgument("confusion matrix must be square over the class list");
  }
  for (const auto& row : confusion) {
    if (row.size() != n) throw InvalidArgument("confusion matrix must be square");
  }
  Metrics m;
  m.classes = std::move(classes);
  m.confusion = std::move(confusion);
  std::size_t trace = 0;
  for (std::size_t a = 0; a < n; ++a) {
    trace += m.confusion[a][a];
    for (std::size_t p = 0; p < n; ++p) m.total += m.confusion[a][p];
  }
  m.accuracy = m.total ? static_cast<double>(trace) / static_cast<double>(m.total) : 0.0;

  m.per_class.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    ClassScores& s = m.per_class[c];
    const std::size_t tp = m.confusion[c][c];
    std::size_t predicted = 0;
    for (std::size_t a = 0; a < n; ++a) predicted += m.confusion[a][c];
    for (std::size_t p = 0; p < n; ++p) s.support += m.confusion[c][p];
    s.precision_undefined = predicted == 0;
    s.recall_undefined = s.support == 0;
    if (!s.precision_undefined) s.precision = static_cast<double>(tp) / predicted;
    if (!s.recall_undefined) s.recall = static_cast<double>(tp) / s.support;
    // 2PR/(P+R) written as one ratio of counts, so hand counts match exactly.
    const std::size_t f1_den = 2 * tp + (predicted - tp) + (s.support - tp);
    s.f1_undefined = s.precision + s.recall == 0.0;
    if (!s.f1_undefined) s.f1 = static_cast<double>(2 * tp) / static_cast<double>(f1_den);
    m.macro_precision += s.precision;
    m.macro_recall += s.recall;
    m.macro_f1 += s.f1;
  }
  m.macro_precision /= static_cast<double>(n);
  m.macro_recall /= static_cast<double>(n);
  m.macro_f1 /= static_cast<double>(n);
  return m;
}

Metrics metrics_from_predictions(std::vector<std::string> classes, std::span<const int> actual,
                                 std::span<const int> predicted) {
  if (actual.size() != predicted.size()) {
    throw InvalidArgument("actual and predicted label counts differ");
  }
  const int n = static_cast<int>(classes.size());
  std::vector<std::vector<std::size_t>> confusion(classes.size(),
                                                  std::vector<std::size_t>(classes.size(), 0));
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] < 0 || actual[i] >= n || predicted[i] < 0 || predicted[i] >= n) {
      throw InvalidArgument("label out of range at example " + std::to_string(i));
    }
    ++confusion[static_cast<std::size_t>(actual[i])][static_cast<std::size_t>(predicted[i])];
  }
  return metrics_from_confusion(std::move(classes), std::move(confusion));
}

Metrics evaluate(const learn::ClassifierModel& model, const learn::DomainDataset& dataset) {
  if (dataset.size() == 0) throw InvalidArgument("cannot evaluate on an empty dataset");
  if (dataset.classes != model.classes) {
    std::string want, got;
    for (const std::string& c : model.classes) want += (want.empty() ? "" : ",") + c;
    for (const std::string& c : dataset.classes) got += (got.empty() ? "" : ",") + c;
    throw InvalidArgument("label space mismatch: model [" + want + "], dataset [" + got + "]");
  }
  dataset.validate();
  std::vector<int> predicted;
  predicted.reserve(dataset.size());
  for (const learn::FeatureVector& x : dataset.features) {
    predicted.push_back(argmax(learn::classifier_forward(model, x).probabilities));
  }
  return metrics_from_predictions(model.classes, dataset.labels, predicted);
}

namespace {

void append_row(std::string& out, const std::string& name, double p, double r, double f) {
  char buf[128];
  std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f\n", p, r, f);
  out += name;
  out += buf;
}

}  // namespace

std::string report_csv(const Metrics& metrics) {
  std::string out = "class,precision,recall,f1\n";
  for (std::size_t c = 0; c < metrics.classes.size(); ++c) {
    const ClassScores& s = metrics.per_class[c];
    append_row(out, metrics.classes[c], s.precision, s.recall, s.f1);
  }
  append_row(out, "macro", metrics.macro_precision, metrics.macro_recall, metrics.macro_f1);
  return out;
}

std::string confusion_csv(const Metrics& metrics) {
  std::string out = "actual";
  for (const std::string& c : metrics.classes) out += "," + c;
  out += '\n';
  for (std::size_t a = 0; a < metrics.classes.size(); ++a) {
    out += metrics.classes[a];
    for (std::size_t v : metrics.confusion[a]) out += "," + std::to_string(v);
    out += '\n';
  }
  return out;
}

}  // namespace rsa::harness
