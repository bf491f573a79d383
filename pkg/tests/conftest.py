import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=40)
settings.load_profile("exact")
