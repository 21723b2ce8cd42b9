#ifndef ELLGRAPH_HPP
#define ELLGRAPH_HPP

#include <ellgraph/rational.hpp>
#include <ellgraph/qmodring.hpp>
#include <ellgraph/ring_io.hpp>
#include <ellgraph/graph.hpp>
#include <ellgraph/graph_io.hpp>
#include <ellgraph/residual.hpp>
#include <ellgraph/integrator.hpp>
#include <ellgraph/series.hpp>
#include <ellgraph/oracle.hpp>
#include <ellgraph/corpus.hpp>
#include <ellgraph/verify.hpp>

#endif
