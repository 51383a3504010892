#pragma once

#include "aslgloss/clip_io.hpp"
#include "aslgloss/corpusgen.hpp"
#include "aslgloss/error.hpp"
#include "aslgloss/glossc.hpp"
#include "aslgloss/lemmatizer.hpp"
#include "aslgloss/lexicon.hpp"
#include "aslgloss/metrics.hpp"
#include "aslgloss/motion.hpp"
#include "aslgloss/parallel.hpp"
#include "aslgloss/pipeline.hpp"
#include "aslgloss/skeleton.hpp"
#include "aslgloss/spline.hpp"
#include "aslgloss/synthesis.hpp"
#include "aslgloss/textnorm.hpp"
#include "aslgloss/unicode.hpp"
#include "aslgloss/wordmap.hpp"
