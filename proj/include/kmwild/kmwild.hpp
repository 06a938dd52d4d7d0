#ifndef KMWILD_KMWILD_HPP
#define KMWILD_KMWILD_HPP

#include "kmwild/convolution.hpp"
#include "kmwild/lce_index.hpp"
#include "kmwild/matcher.hpp"
#include "kmwild/text_model.hpp"
#include "kmwild/verifiers.hpp"

#endif  // KMWILD_KMWILD_HPP
