/*
 * Copyright 2026 The mvpir Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mvpir/encoder.h"

#include <fstream>
#include <iterator>

#include "mvpir/errors.h"

namespace mvpir {

EncodedDatabase::EncodedDatabase(std::uint32_t m, std::size_t k, std::size_t n,
                                 std::vector<Term> terms)
    : m_(m), k_(k), n_(n), terms_(std::move(terms)) {
  check_modulus(m);
  for (const auto& t : terms_) {
    if (t.exponent.size() != k_) throw ParameterError("term exponent has wrong dimension");
    if (t.coeff == 0 || t.coeff >= m_) throw ParameterError("term coefficient out of range");
  }
}

EncodedDatabase encode(std::span<const std::uint32_t> symbols, const MVFamily& family) {
  if (symbols.size() > family.size()) {
    throw ParameterError("database of length " + std::to_string(symbols.size()) +
                         " exceeds family size " + std::to_string(family.size()));
  }
  std::vector<Term> terms;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= family.m) {
      throw ParameterError("database symbol " + std::to_string(symbols[i]) + " at index " +
                           std::to_string(i) + " is not a residue mod " +
                           std::to_string(family.m));
    }
    if (symbols[i] != 0) terms.push_back(Term{symbols[i], family.u[i]});
  }
  return EncodedDatabase(family.m, family.k, symbols.size(), std::move(terms));
}

namespace {

void check_point(const EncodedDatabase& db, std::span<const std::uint32_t> w) {
  if (w.size() != db.dimension()) throw ParameterError("evaluation point has wrong dimension");
  for (std::uint32_t c : w) {
    if (c >= db.modulus()) throw ParameterError("evaluation point not reduced mod m");
  }
}

// Coefficient accumulators, one row of length r per ring element.
struct Accumulator {
  std::uint32_t m;
  std::size_t r;
  std::vector<std::uint64_t> cells;

  Accumulator(std::uint32_t m_in, std::size_t r_in, std::size_t count)
      : m(m_in), r(r_in), cells(count * r_in, 0) {}

  void add(std::size_t slot, std::size_t exponent, std::uint64_t value) {
    std::uint64_t& cell = cells[slot * r + exponent];
    cell = (cell + value) % m;
  }

  RingElem take(std::size_t slot) const {
    std::vector<std::int64_t> c(cells.begin() + slot * r, cells.begin() + (slot + 1) * r);
    return RingElem(m, static_cast<std::uint32_t>(r), c);
  }
};

}  // namespace

AnswerBundle evaluate_bundle(const EncodedDatabase& db, std::span<const std::uint32_t> w,
                             bool with_f2) {
  check_point(db, w);
  const std::uint32_t m = db.modulus();
  const std::size_t r = db.order();
  const std::size_t k = db.dimension();

  Accumulator f0(m, r, 1);
  Accumulator f1(m, r, k);
  Accumulator f2(m, r, with_f2 ? k * k : 0);
  for (const Term& term : db.terms()) {
    const std::size_t e = inner_product_mod(w, term.exponent, m) % r;
    f0.add(0, e, term.coeff);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t uj = term.exponent[j];
      if (uj == 0) continue;
      f1.add(j, e, term.coeff * uj);
      if (!with_f2) continue;
      for (std::size_t l = 0; l < k; ++l) {
        const std::uint64_t ul = term.exponent[l];
        if (ul != 0) f2.add(j * k + l, e, (term.coeff * uj % m) * ul);
      }
    }
  }

  AnswerBundle bundle{f0.take(0), {}, std::nullopt};
  bundle.f1.reserve(k);
  for (std::size_t j = 0; j < k; ++j) bundle.f1.push_back(f1.take(j));
  if (with_f2) {
    RingMatrix mat(k, m, static_cast<std::uint32_t>(r));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) mat.set(j, l, f2.take(j * k + l));
    }
    bundle.f2 = std::move(mat);
  }
  return bundle;
}

RingElem eval_f(const EncodedDatabase& db, std::span<const std::uint32_t> w) {
  return evaluate_bundle(db, w, false).f0;
}

std::vector<RingElem> eval_f1(const EncodedDatabase& db, std::span<const std::uint32_t> w) {
  return evaluate_bundle(db, w, false).f1;
}

RingMatrix eval_f2(const EncodedDatabase& db, std::span<const std::uint32_t> w) {
  return *evaluate_bundle(db, w, true).f2;
}

std::vector<std::uint8_t> AnswerBundle::serialize() const {
  std::vector<std::uint8_t> out;
  f0.serialize(out);
  for (const auto& e : f1) e.serialize(out);
  if (f2) {
    for (std::size_t j = 0; j < f2->size(); ++j) {
      for (std::size_t l = 0; l < f2->size(); ++l) f2->at(j, l).serialize(out);
    }
  }
  return out;
}

std::size_t AnswerBundle::serialized_size(std::uint32_t r, std::size_t k, bool with_f2) {
  return (1 + k + (with_f2 ? k * k : 0)) * r;
}

AnswerBundle AnswerBundle::deserialize(std::span<const std::uint8_t> bytes, std::uint32_t m,
                                       std::uint32_t r, std::size_t k, bool with_f2) {
  if (bytes.size() != serialized_size(r, k, with_f2)) {
    throw ParseError("answer body has " + std::to_string(bytes.size()) + " bytes, expected " +
                     std::to_string(serialized_size(r, k, with_f2)));
  }
  std::size_t off = 0;
  auto next = [&]() {
    RingElem e = RingElem::deserialize(bytes.subspan(off, r), m, r);
    off += r;
    return e;
  };
  AnswerBundle bundle{next(), {}, std::nullopt};
  for (std::size_t j = 0; j < k; ++j) bundle.f1.push_back(next());
  if (with_f2) {
    RingMatrix mat(k, m, r);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) mat.set(j, l, next());
    }
    bundle.f2 = std::move(mat);
  }
  return bundle;
}

std::vector<std::uint32_t> load_database(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open database file " + path.string());
  std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(is)),
                                std::istreambuf_iterator<char>());
  return std::vector<std::uint32_t>(raw.begin(), raw.end());
}

void save_database(std::span<const std::uint32_t> symbols, const std::filesystem::path& path) {
  std::vector<char> raw;
  raw.reserve(symbols.size());
  for (std::uint32_t s : symbols) {
    if (s > 255) throw ParameterError("database symbol does not fit in a byte");
    raw.push_back(static_cast<char>(s));
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot open " + path.string() + " for writing");
  os.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

}  // namespace mvpir
