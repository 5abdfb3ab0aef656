from wavediv.core.config import get_settings

# Save settings for import in other modules
global_settings = get_settings()
