# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""ETL streams."""

import logging
from datetime import datetime

logger = logging.getLogger(__name__)


class Stream:
    """ETL stream."""

    def __init__(self, extract, transform, load, name="stream"):
        """Constructor."""
        self.extract = extract
        self.transform = transform
        self.load = load
        self.name = name
        self.elapsed = None

    def run(self, cleanup=False):
        """Run ETL stream and return the written artifacts."""
        start_time = datetime.now()
        logger.info("%s started %s", self.name, start_time.isoformat())

        extract_gen = self.extract.run()
        transform_gen = self.transform.run(extract_gen)
        written = self.load.run(transform_gen, cleanup=cleanup)

        end_time = datetime.now()
        self.elapsed = end_time - start_time
        logger.info("%s ended %s", self.name, end_time.isoformat())
        logger.info("Execution time: %s", self.elapsed)
        return written
