from multisect.mixins.presentable_mixin import PresentableMixin
from multisect.mixins.readable_mixin import ReadableMixin
