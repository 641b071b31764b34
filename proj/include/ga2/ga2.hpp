/*
   Copyright 2026 The ga2 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef GA2_GA2_HPP
#define GA2_GA2_HPP

#include "conjugacy.hpp"
#include "decompose.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "maps.hpp"
#include "mpoly.hpp"
#include "normalize.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "symmetry.hpp"
#include "word.hpp"

#endif  // GA2_GA2_HPP
