#ifndef LCA_LCA2_HPP
#define LCA_LCA2_HPP

#include "aut.hpp"
#include "classify.hpp"
#include "io.hpp"
#include "lca.hpp"
#include "normalize.hpp"
#include "padmod.hpp"
#include "skewsym.hpp"

#endif
