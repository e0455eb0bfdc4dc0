# Rendering helpers
