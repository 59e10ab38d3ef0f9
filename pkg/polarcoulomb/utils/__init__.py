# polarcoulomb/utils/__init__.py
