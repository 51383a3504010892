// Compiles a few English sentences into ASL gloss with the bundled lexicon.
#include <iostream>

#include "aslgloss/aslgloss.hpp"

int main(int argc, char** argv) {
  const auto lex = aslgloss::load_lexicon(std::string(ASLGLOSS_SAMPLE_DATA_DIR) + "/lexicon.tsv");
  std::vector<std::string> sentences{"Yesterday I went to school.", "Where are you going?",
                                     "Emma watches TV.", "When she arrived, we left."};
  if (argc > 1) sentences.assign(argv + 1, argv + argc);

  aslgloss::CompilerConfig marked;
  marked.clause_marker = true;
  for (const auto& s : sentences) {
    const auto g = aslgloss::gloss_sentence(s, lex, aslgloss::default_tables(), marked);
    std::cout << s << "\n  -> " << g.str(true) << '\n';
  }
}
