// Copyright 2026 The QRP Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRP_QRP_H
#define QRP_QRP_H

#include "qrp/channels.h"
#include "qrp/encoding.h"
#include "qrp/engine.h"
#include "qrp/ensembles.h"
#include "qrp/linalg.h"
#include "qrp/metrics.h"
#include "qrp/parallel.h"
#include "qrp/rng.h"
#include "qrp/training.h"
#include "qrp/unroll.h"

#endif
