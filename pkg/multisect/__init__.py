# diagrams loads before the mixins package, which reads its cut systems
from multisect import diagrams, freewords, presentations
