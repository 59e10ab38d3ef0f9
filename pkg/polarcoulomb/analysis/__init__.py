# polarcoulomb/analysis/__init__.py
