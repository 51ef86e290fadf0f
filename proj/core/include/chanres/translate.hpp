#pragma once

// Global type -> HMSC. Every subterm becomes a vertex; every branch of a
// choice gets its own vertex labelled with the single exchange. Structural
// vertices carry the empty BMSC.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chanres/global_type.hpp"
#include "chanres/hmsc.hpp"
#include "chanres/indist.hpp"

namespace chanres {

struct VertexOrigin {
  GlobalTypePtr subterm;
  /// 1-based branch index for branch vertices of a choice subterm.
  std::optional<std::size_t> branch;
};

struct TranslationOutput {
  Hmsc hmsc;
  /// Indexed by HMSC vertex.
  std::vector<VertexOrigin> origin;
};

/// Throws InvalidModel if g is not well-formed.
TranslationOutput translate(const GlobalTypePtr& g);

/// Merges non-terminal empty vertices that have a single successor other
/// than themselves into that successor. Preserves the language.
Hmsc fuse_empty_vertices(const Hmsc& h);

struct TranslationCheck {
  std::size_t max_len = 0;
  std::size_t type_words = 0;
  std::size_t hmsc_words = 0;
  /// Type words are all HMSC words.
  bool inclusion = false;
  /// The HMSC has words the type lacks.
  bool strict = false;
  /// Both languages have the same indistinguishability closure.
  bool closure_equal = false;
  std::optional<Word> inclusion_counterexample;
  std::optional<Word> closure_counterexample;

  bool ok() const { return inclusion && closure_equal; }
};

/// Compares the finite type language with the finite HMSC language, both
/// restricted to words of length <= max_len.
TranslationCheck verify_translation(const GlobalTypePtr& g, std::size_t max_len,
                                    std::size_t budget = kDefaultClosureBudget);

}  // namespace chanres
